#include "probball/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "probball/detail/counts.hpp"
#include "probball/errors.hpp"

namespace probball {

namespace detail {

std::size_t ceil_count(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(x));
}

}  // namespace detail

using detail::ceil_count;

std::string_view to_string(Mode mode) {
  return mode == Mode::kPaperFaithful ? "paper" : "practical";
}

Mode parse_mode(std::string_view text) {
  if (text == "paper") return Mode::kPaperFaithful;
  if (text == "practical") return Mode::kPractical;
  throw ConfigError("unknown mode '" + std::string(text) + "' (expected paper|practical)");
}

SolverConfig SolverConfig::practical(double epsilon, double eta, std::uint64_t seed) {
  SolverConfig c;
  c.epsilon = epsilon;
  c.eta = eta;
  c.seed = seed;
  return c;
}

SolverConfig SolverConfig::paper_faithful(double epsilon, double eta, std::uint64_t seed) {
  SolverConfig c = practical(epsilon, eta, seed);
  c.mode = Mode::kPaperFaithful;
  c.c_iters = kPaperIterConstant;
  c.c_select = kPaperSelectConstant;
  return c;
}

void SolverConfig::validate() const {
  // The approximation guarantee needs eps < 1/9; larger values still run.
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw ConfigError("eta must lie in (0, 1), got " + std::to_string(eta));
  }
  if (!(c_iters > 0.0) || !std::isfinite(c_iters)) throw ConfigError("c_iters must be positive");
  if (!(c_select > 0.0) || !std::isfinite(c_select)) throw ConfigError("c_select must be positive");
  if (candidate_budget == 0) throw ConfigError("candidate_budget must be positive");
  if (mode == Mode::kPaperFaithful &&
      (c_iters != kPaperIterConstant || c_select != kPaperSelectConstant)) {
    throw ConfigError("paper mode fixes c_iters = 68 and c_select = 64");
  }
  if (repetitions && *repetitions == 0) throw ConfigError("repetitions must be positive");
  if (reduce_sets && !(*reduce_sets > 0.0 && *reduce_sets < 1.0)) {
    throw ConfigError("reduce_sets accuracy must lie in (0, 1)");
  }
  if (max_trials && *max_trials == 0) throw ConfigError("max_trials must be positive");
}

std::size_t SolverConfig::iterations() const {
  const double r = c_iters / epsilon;
  return std::max<std::size_t>(1, ceil_count(r * r));
}

std::size_t SolverConfig::step_size_count() const {
  return ceil_count(std::log2(2.0 / std::pow(epsilon, 4))) + 1;
}

std::size_t SolverConfig::repetition_count() const {
  if (repetitions) return *repetitions;
  return std::max<std::size_t>(1, ceil_count(std::log2(1.0 / eta)));
}

std::size_t SolverConfig::selection_sample_size(std::size_t candidate_count) const {
  const double c = static_cast<double>(std::max<std::size_t>(1, candidate_count));
  return std::max<std::size_t>(1, ceil_count(c_select / (epsilon * epsilon) * std::log(8.0 * c)));
}

}  // namespace probball
