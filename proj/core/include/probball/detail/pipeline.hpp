#pragma once

// Set-median pipeline written once against an abstract center space, so the
// explicit (R^d), ball-reduced and kernel (implicit) solvers consume random
// numbers identically and differ only in how distances and steps are computed.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "probball/config.hpp"
#include "probball/detail/parallel.hpp"
#include "probball/geometry.hpp"
#include "probball/rng.hpp"
#include "probball/setmedian.hpp"

namespace probball::detail {

template <class S>
concept CenterSpace = requires(const S& space, typename S::Center& center, std::size_t set,
                               const Furthest& furthest, double step) {
  typename S::Center;
  { space.set_count() } -> std::convertible_to<std::size_t>;
  { space.family() } -> std::same_as<const SetFamily&>;
  { space.seed_center(set) } -> std::same_as<typename S::Center>;
  { space.furthest(center, set) } -> std::same_as<Furthest>;
  // c <- c - step * (c - p) / ||c - p|| for the witness p; no-op at distance 0.
  { space.advance(center, set, furthest, step) };
  // Objective used to rank repetitions.
  { space.evaluate(center) } -> std::convertible_to<double>;
};

template <class Center>
struct InitialEstimate {
  double r_tilde = 0.0;
  Center c0;
  std::vector<std::size_t> sample_indices;
};

std::size_t radius_sample_size(double epsilon);

template <CenterSpace S>
InitialEstimate<typename S::Center> estimate_radius_in(const S& space, double epsilon, Rng& rng) {
  const std::size_t n = space.set_count();
  InitialEstimate<typename S::Center> out{0.0, space.seed_center(uniform_index(rng, n)), {}};
  const std::size_t samples = radius_sample_size(epsilon);
  out.sample_indices.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) out.sample_indices.push_back(uniform_index(rng, n));
  for (std::size_t i : out.sample_indices) out.r_tilde += space.furthest(out.c0, i).value;
  return out;
}

/// Runs `iterations` fixed-step updates from c0, calling sink(i, c_i) for
/// i = 0..iterations.
template <CenterSpace S, class Sink>
void descend(const S& space, typename S::Center center, double step, std::size_t iterations,
             Rng& rng, Sink&& sink) {
  const std::size_t n = space.set_count();
  sink(std::size_t{0}, static_cast<const typename S::Center&>(center));
  for (std::size_t i = 1; i <= iterations; ++i) {
    const std::size_t j = uniform_index(rng, n);
    const Furthest far = space.furthest(center, j);
    space.advance(center, j, far, step);
    sink(i, static_cast<const typename S::Center&>(center));
  }
}

/// Draws the selection sample and returns it as per-set multiplicities.
/// Sums over the sample are then taken in ascending set order.
std::vector<std::uint32_t> draw_selection_counts(std::size_t set_count, std::size_t sample_size,
                                                 Rng& rng);

/// Moves the multiplicity of every set onto the lowest-indexed set with the
/// same coordinates. Sampled families repeat realizations heavily.
void fold_identical_sets(std::vector<std::uint32_t>& counts, const SetFamily& family);

template <CenterSpace S>
Selection select_in(const S& space, std::span<const typename S::Center> candidates,
                    std::size_t sample_size, Rng& rng) {
  auto counts = draw_selection_counts(space.set_count(), sample_size, rng);
  fold_identical_sets(counts, space.family());
  Selection best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    double cost = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] != 0) cost += counts[i] * space.furthest(candidates[a], i).value;
    }
    if (cost < best.sample_cost) best = {a, cost};
  }
  return best;
}

template <class Center>
struct RepetitionOutcome {
  Center center;
  double cost = 0.0;
  double r_tilde = 0.0;
  bool degenerate = false;
  std::size_t iterations = 0;
  std::size_t candidates = 0;
  std::size_t sample_size = 0;
  std::size_t selected = 0;
};

template <CenterSpace S>
RepetitionOutcome<typename S::Center> run_repetition(const S& space, const SolverConfig& config,
                                                     std::uint64_t stream_seed) {
  using Center = typename S::Center;
  Rng init_rng = phase_rng(stream_seed, Phase::kInit);
  auto estimate = estimate_radius_in(space, config.epsilon, init_rng);

  if (estimate.r_tilde == 0.0) {
    RepetitionOutcome<Center> out{estimate.c0};
    out.degenerate = true;
    out.candidates = 1;
    out.cost = space.evaluate(out.center);
    return out;
  }

  Rng descent_rng = phase_rng(stream_seed, Phase::kDescent);
  CandidateCollector<Center> collector(config.mode, config.candidate_budget);
  const std::size_t iterations = config.iterations();
  const std::size_t grid = config.step_size_count();
  const double base = std::pow(config.epsilon, 3) * estimate.r_tilde;
  const double scale = 1.0 / std::sqrt(static_cast<double>(iterations) + 1.0);
  for (std::size_t j = 0; j < grid; ++j) {
    const double r_j = std::ldexp(base, static_cast<int>(j) - 1);
    collector.begin_run(iterations);
    descend(space, estimate.c0, r_j * scale, iterations, descent_rng, collector);
  }

  auto& candidates = collector.candidates();
  Rng selection_rng = phase_rng(stream_seed, Phase::kSelection);
  const std::size_t sample_size = config.selection_sample_size(candidates.size());
  const Selection pick = select_in<S>(space, candidates, sample_size, selection_rng);

  RepetitionOutcome<Center> out{std::move(candidates[pick.index])};
  out.cost = space.evaluate(out.center);
  out.r_tilde = estimate.r_tilde;
  out.iterations = iterations * grid;
  out.candidates = candidates.size();
  out.sample_size = sample_size;
  out.selected = pick.index;
  return out;
}

template <class Center>
struct Solved {
  Center center;
  double cost = 0.0;
  Diagnostics diagnostics;
};

/// Runs the configured number of independent repetitions and keeps the one
/// with the smallest objective (lowest repetition index on ties).
template <CenterSpace S>
Solved<typename S::Center> solve_in(const S& space, const SolverConfig& config) {
  using Center = typename S::Center;
  config.validate();
  const std::size_t reps = config.repetition_count();
  std::vector<std::optional<RepetitionOutcome<Center>>> outcomes(reps);
  for_each_index(reps, config.threads, [&](std::size_t r) {
    outcomes[r] = run_repetition(space, config, repetition_seed(config.seed, r));
  });

  std::size_t winner = 0;
  Diagnostics diag;
  diag.repetitions = reps;
  diag.step_sizes_tried = config.step_size_count();
  for (std::size_t r = 0; r < reps; ++r) {
    const auto& o = *outcomes[r];
    diag.iterations_total += o.iterations;
    diag.candidates_generated += o.candidates;
    diag.repetition_costs.push_back(o.cost);
    if (o.cost < outcomes[winner]->cost) winner = r;
  }
  auto& best = *outcomes[winner];
  diag.winning_repetition = winner;
  diag.selected_candidate = best.selected;
  diag.selection_sample_size = best.sample_size;
  diag.r_tilde = best.r_tilde;
  diag.degenerate = best.degenerate;
  return {std::move(best.center), best.cost, std::move(diag)};
}

}  // namespace probball::detail
