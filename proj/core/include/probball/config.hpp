#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace probball {

enum class Mode {
  kPaperFaithful,  // proof constants, every iterate kept as a candidate
  kPractical,      // smaller constants, stride-thinned candidates
};

std::string_view to_string(Mode mode);
/// Accepts "paper" and "practical". Throws ConfigError otherwise.
Mode parse_mode(std::string_view text);

struct SolverConfig {
  static constexpr double kPaperIterConstant = 68.0;
  static constexpr double kPaperSelectConstant = 64.0;
  static constexpr double kPracticalIterConstant = 8.0;
  static constexpr double kPracticalSelectConstant = 16.0;
  static constexpr std::size_t kDefaultCandidateBudget = 128;

  double epsilon = 0.1;
  double eta = 0.1;
  std::uint64_t seed = 0;
  Mode mode = Mode::kPractical;
  double c_iters = kPracticalIterConstant;
  double c_select = kPracticalSelectConstant;
  std::size_t candidate_budget = kDefaultCandidateBudget;

  /// Overrides ceil(log2(1/eta)).
  std::optional<std::size_t> repetitions;
  /// Bădoiu-Clarkson accuracy for the opt-in ball reduction of input sets.
  std::optional<double> reduce_sets;
  /// Overrides ceil(8k/eps) for realization rejection sampling.
  std::optional<std::uint64_t> max_trials;
  /// Worker threads for repetitions; 0 runs sequentially. Never changes results.
  unsigned threads = 0;

  static SolverConfig practical(double epsilon, double eta = 0.1, std::uint64_t seed = 0);
  static SolverConfig paper_faithful(double epsilon, double eta = 0.1, std::uint64_t seed = 0);

  /// Throws ConfigError on out-of-range parameters.
  void validate() const;

  /// ceil((c_iters / eps)^2).
  std::size_t iterations() const;
  /// Number of step sizes in the doubling grid: ceil(log2(2 / eps^4)) + 1.
  std::size_t step_size_count() const;
  std::size_t repetition_count() const;
  /// ceil(c_select / eps^2 * ln(8 |C|)).
  std::size_t selection_sample_size(std::size_t candidate_count) const;
};

}  // namespace probball
