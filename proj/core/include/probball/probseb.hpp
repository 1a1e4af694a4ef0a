#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "probball/config.hpp"
#include "probball/geometry.hpp"
#include "probball/rng.hpp"
#include "probball/setmedian.hpp"

namespace probball {

/// One outcome of a probabilistic point. An empty location is the "absent"
/// outcome.
struct Entry {
  std::optional<Point> location;
  double prob = 0.0;
};

/// A probabilistic point: finitely many locations with probabilities summing
/// to one. Absent outcomes are merged into a single trailing entry.
class DiscreteDistribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  /// Throws InstanceError for an empty entry list, probabilities outside
  /// [0, 1], a sum off by more than kSumTolerance, mixed dimensions or
  /// non-finite coordinates.
  explicit DiscreteDistribution(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  /// Dimension of the present locations; 0 when every outcome is absent.
  Eigen::Index dim() const { return dim_; }
  double absent_prob() const;

 private:
  std::vector<Entry> entries_;
  Eigen::Index dim_ = 0;
};

class ProbInstance {
 public:
  ProbInstance(std::vector<DiscreteDistribution> distributions, Eigen::Index dim);

  std::size_t size() const { return distributions_.size(); }
  Eigen::Index dim() const { return dim_; }
  const DiscreteDistribution& operator[](std::size_t i) const { return distributions_[i]; }
  auto begin() const { return distributions_.begin(); }
  auto end() const { return distributions_.end(); }

 private:
  std::vector<DiscreteDistribution> distributions_;
  Eigen::Index dim_;
};

struct Realization {
  std::vector<Point> points;
};

/// Sum of the probabilities of all present locations over all distributions.
double presence_mass(const ProbInstance& instance);

/// Probability that a realization contains at least one point.
double nonempty_probability(const ProbInstance& instance);

/// k independent draws of a present location, each proportional to its
/// probability, as k singleton sets. Uses k parallel single-pass weighted
/// reservoir samplers over the location stream.
SetFamily sample_locations_weighted(const ProbInstance& instance, std::size_t k, Rng& rng);

/// One joint draw of all distributions.
Realization sample_realization(const ProbInstance& instance, Rng& rng);

struct RealizationSample {
  SetFamily family;
  std::uint64_t trials = 0;
};

/// Rejection-samples realizations until k non-empty ones are collected.
/// Throws TrialsExhausted after max_trials draws.
RealizationSample sample_nonempty_realizations(const ProbInstance& instance, std::size_t k,
                                               std::uint64_t max_trials, Rng& rng);

/// E[m(c, X)] by enumerating all realizations. Throws EnumerationCapExceeded
/// when the number of index tuples exceeds `cap`.
double expected_cost(PointRef c, const ProbInstance& instance, std::uint64_t cap = 1'000'000);

/// sum_{i,j} p_ij ||c - q_ij||: the weighted 1-median surrogate that
/// brackets the expected cost when the presence mass is small.
double surrogate_cost(PointRef c, const ProbInstance& instance);

/// ceil(c_select / eps^2 * ln(1 / eps)).
std::size_t pseb_sample_size(const SolverConfig& config);

/// The sampled set-median instance that stands in for the probabilistic one.
struct SampledFamily {
  SetFamily family;
  int sampling_case = 0;  // 1: weighted locations, 2: non-empty realizations
  std::uint64_t trials = 0;
  /// Multiplier turning the family's mean max distance into an estimate of
  /// the expected cost: the presence mass in case 1, Pr[X non-empty] in case 2.
  double cost_scale = 1.0;
};

/// Case split on presence mass <= eps, then the matching sampler.
SampledFamily sample_reduction(const ProbInstance& instance, const SolverConfig& config);

/// Probabilistic smallest enclosing ball: sample_reduction followed by
/// solve_set_median on the sampled family.
SolveResult solve_pseb(const ProbInstance& instance, const SolverConfig& config);

}  // namespace probball
