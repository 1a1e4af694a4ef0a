#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "probball/config.hpp"
#include "probball/geometry.hpp"
#include "probball/rng.hpp"

namespace probball {

struct Subgradient {
  Point direction;
  /// Set that produced a stochastic subgradient; empty for the exact sum.
  std::optional<std::size_t> source_index;
};

/// sum_j (c - p_j) / ||c - p_j|| over the furthest points p_j, with terms
/// where c == p_j contributing zero.
Subgradient exact_subgradient(PointRef c, const SetFamily& family);

/// One term of the exact subgradient for a uniformly chosen set. The result
/// has norm exactly 0 or 1 (up to rounding) and its mean is g(c) / N.
Subgradient stochastic_subgradient(PointRef c, const SetFamily& family, Rng& rng);

/// First point of a uniformly chosen set.
Point pick_initial_center(const SetFamily& family, Rng& rng);

struct RadiusEstimate {
  double r_tilde = 0.0;
  Point c0;
  std::vector<std::size_t> sample_indices;
};

/// Draws c0 with pick_initial_center, then ceil(1/eps) sets uniformly with
/// repetition, and sums their max distances to c0.
RadiusEstimate estimate_radius(const SetFamily& family, const SolverConfig& config, Rng& rng);

/// sum over the given set indices of m(c0, P_i).
double radius_from_sample(PointRef c0, const SetFamily& family,
                          std::span<const std::size_t> sample_indices);

/// Retains iterates of the descent as selection candidates. PaperFaithful
/// keeps every iterate. Practical keeps a uniform stride of at most
/// `budget` iterates per run plus the run's last iterate; iterate 0 (the
/// start) always falls on the stride.
template <class Center>
class CandidateCollector {
 public:
  CandidateCollector(Mode mode, std::size_t budget) : mode_(mode), budget_(budget == 0 ? 1 : budget) {}

  void begin_run(std::size_t iterations) {
    last_ = iterations;
    if (mode_ == Mode::kPaperFaithful) {
      stride_ = 1;
    } else {
      stride_ = (iterations + 1 + budget_ - 1) / budget_;
      if (stride_ == 0) stride_ = 1;
    }
  }

  void operator()(std::size_t i, const Center& center) {
    if (i % stride_ == 0 || i == last_) candidates_.push_back(center);
  }

  std::vector<Center>& candidates() { return candidates_; }
  const std::vector<Center>& candidates() const { return candidates_; }

 private:
  Mode mode_;
  std::size_t budget_;
  std::size_t stride_ = 1;
  std::size_t last_ = 0;
  std::vector<Center> candidates_;
};

/// Fixed-step stochastic subgradient descent. Returns c_0, ..., c_iters and
/// feeds each iterate to `collector` when one is given.
std::vector<Point> sgd_run(PointRef c0, const SetFamily& family, double step, std::size_t iterations,
                           Rng& rng, CandidateCollector<Point>* collector = nullptr);

struct Selection {
  std::size_t index = 0;
  double sample_cost = 0.0;
};

/// Picks the candidate minimizing the objective restricted to
/// `sample_size` sets drawn uniformly with repetition. Ties go to the
/// lowest candidate index.
Selection select_best_candidate(std::span<const Point> candidates, const SetFamily& family,
                                std::size_t sample_size, Rng& rng);

struct Diagnostics {
  // Totals over all repetitions.
  std::size_t iterations_total = 0;
  std::size_t candidates_generated = 0;
  // Per repetition.
  std::size_t step_sizes_tried = 0;
  std::size_t selection_sample_size = 0;
  std::size_t repetitions = 0;

  // Winning repetition.
  std::size_t winning_repetition = 0;
  std::size_t selected_candidate = 0;
  double r_tilde = 0.0;
  bool degenerate = false;
  std::vector<double> repetition_costs;

  // Set by the probabilistic reductions.
  std::optional<int> sampling_case;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> trials;
  /// Objective of the returned center on the sampled family.
  std::optional<double> family_cost;
  /// Ball-reduced objective of the returned center when sets were reduced.
  std::optional<double> surrogate_cost;
};

struct SolveResult {
  Point center;
  /// Exact set-median objective of `center` for solve_set_median; an
  /// estimate of the expected cost for the probabilistic solvers.
  double cost_estimate = 0.0;
  Diagnostics diagnostics;
};

/// Full pipeline: radius estimate, descent over the doubling step-size grid,
/// sampled candidate selection, all repeated ceil(log2(1/eta)) times with the
/// best repetition (by exact objective) returned.
SolveResult solve_set_median(const SetFamily& family, const SolverConfig& config);

}  // namespace probball
