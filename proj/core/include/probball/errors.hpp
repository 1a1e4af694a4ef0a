#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace probball {

/// Malformed input: empty sets, dimension mismatch, non-finite coordinates,
/// probabilities that do not sum to one.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solver parameters outside their admissible range.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed run that could not produce a result.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrialsExhausted : public SolverError {
 public:
  TrialsExhausted(std::uint64_t trials, std::size_t collected, std::size_t wanted)
      : SolverError("realization sampling exhausted " + std::to_string(trials) +
                    " trials with " + std::to_string(collected) + " of " +
                    std::to_string(wanted) + " non-empty realizations collected"),
        trials_(trials),
        collected_(collected) {}

  std::uint64_t trials_used() const { return trials_; }
  std::size_t collected() const { return collected_; }

 private:
  std::uint64_t trials_;
  std::size_t collected_;
};

class EnumerationCapExceeded : public SolverError {
 public:
  explicit EnumerationCapExceeded(std::uint64_t cap)
      : SolverError("realization count exceeds enumeration cap " + std::to_string(cap) +
                    "; use a Monte-Carlo estimate instead") {}
};

}  // namespace probball
