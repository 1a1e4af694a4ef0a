#include "probball/setmedian.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <unordered_map>

#include "probball/coreset.hpp"
#include "probball/detail/counts.hpp"
#include "probball/detail/pipeline.hpp"
#include "probball/errors.hpp"

namespace probball {

namespace detail {

std::size_t radius_sample_size(double epsilon) {
  return std::max<std::size_t>(1, ceil_count(1.0 / epsilon));
}

std::vector<std::uint32_t> draw_selection_counts(std::size_t set_count, std::size_t sample_size,
                                                 Rng& rng) {
  std::vector<std::uint32_t> counts(set_count, 0);
  for (std::size_t k = 0; k < sample_size; ++k) ++counts[uniform_index(rng, set_count)];
  return counts;
}

void fold_identical_sets(std::vector<std::uint32_t>& counts, const SetFamily& family) {
  std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    const auto& m = family[i].matrix();
    const std::string_view bytes(reinterpret_cast<const char*>(m.data()),
                                 static_cast<std::size_t>(m.size()) * sizeof(double));
    auto& bucket = seen[std::hash<std::string_view>{}(bytes)];
    const auto twin = std::find_if(bucket.begin(), bucket.end(),
                                   [&](std::size_t j) { return family[j].matrix() == m; });
    if (twin == bucket.end()) {
      bucket.push_back(i);
    } else {
      counts[*twin] += counts[i];
      counts[i] = 0;
    }
  }
}

}  // namespace detail

namespace {

// Centers are explicit points; distances are exact max distances.
class EuclideanSpace {
 public:
  using Center = Point;

  explicit EuclideanSpace(const SetFamily& family) : family_(family) {}

  std::size_t set_count() const { return family_.size(); }
  const SetFamily& family() const { return family_; }
  Center seed_center(std::size_t set) const { return family_[set].point(0); }
  Furthest furthest(const Center& c, std::size_t set) const { return max_distance(c, family_[set]); }
  void advance(Center& c, std::size_t set, const Furthest& far, double step) const {
    if (far.value == 0.0) return;
    c += (step / far.value) * (family_[set].point(far.witness) - c);
  }
  double evaluate(const Center& c) const { return objective(c, family_); }

 private:
  const SetFamily& family_;
};

// Each set is replaced by an approximate enclosing ball, and the furthest
// point is the antipode of c on that ball's surface.
class BallSpace {
 public:
  using Center = Point;

  BallSpace(const SetFamily& family, std::vector<Ball> balls)
      : family_(family), balls_(std::move(balls)) {}

  std::size_t set_count() const { return family_.size(); }
  const SetFamily& family() const { return family_; }
  Center seed_center(std::size_t set) const { return family_[set].point(0); }
  Furthest furthest(const Center& c, std::size_t set) const {
    return {approx_furthest(balls_[set], c), 0};
  }
  void advance(Center& c, std::size_t set, const Furthest& far, double step) const {
    if (far.value == 0.0) return;
    const Ball& ball = balls_[set];
    const double gap = (c - ball.center).norm();
    if (gap > 0.0) {
      // The antipode lies on the ray from c through the ball center.
      c += (step / gap) * (ball.center - c);
    } else {
      c[0] += step;  // any surface point is a furthest point
    }
  }
  double evaluate(const Center& c) const { return objective(c, family_); }
  const std::vector<Ball>& balls() const { return balls_; }

 private:
  const SetFamily& family_;
  std::vector<Ball> balls_;
};

Point unit_or_zero(PointRef c, PointRef p) {
  Point diff = c - p;
  const double norm = diff.norm();
  if (norm == 0.0) return Point::Zero(c.size());
  return diff / norm;
}

}  // namespace

Subgradient exact_subgradient(PointRef c, const SetFamily& family) {
  require_same_dim(c.size(), family.dim());
  Point g = Point::Zero(c.size());
  for (const auto& set : family) {
    const Furthest far = max_distance(c, set);
    g += unit_or_zero(c, set.point(far.witness));
  }
  return {std::move(g), std::nullopt};
}

Subgradient stochastic_subgradient(PointRef c, const SetFamily& family, Rng& rng) {
  require_same_dim(c.size(), family.dim());
  const std::size_t j = uniform_index(rng, family.size());
  const Furthest far = max_distance(c, family[j]);
  return {unit_or_zero(c, family[j].point(far.witness)), j};
}

Point pick_initial_center(const SetFamily& family, Rng& rng) {
  return family[uniform_index(rng, family.size())].point(0);
}

RadiusEstimate estimate_radius(const SetFamily& family, const SolverConfig& config, Rng& rng) {
  config.validate();
  auto est = detail::estimate_radius_in(EuclideanSpace(family), config.epsilon, rng);
  return {est.r_tilde, std::move(est.c0), std::move(est.sample_indices)};
}

double radius_from_sample(PointRef c0, const SetFamily& family,
                          std::span<const std::size_t> sample_indices) {
  double r = 0.0;
  for (std::size_t i : sample_indices) r += max_distance(c0, family.at(i)).value;
  return r;
}

std::vector<Point> sgd_run(PointRef c0, const SetFamily& family, double step, std::size_t iterations,
                           Rng& rng, CandidateCollector<Point>* collector) {
  require_same_dim(c0.size(), family.dim());
  if (!(step > 0.0)) throw ConfigError("step size must be positive");
  std::vector<Point> iterates;
  iterates.reserve(iterations + 1);
  if (collector) collector->begin_run(iterations);
  detail::descend(EuclideanSpace(family), Point(c0), step, iterations, rng,
                  [&](std::size_t i, const Point& c) {
                    iterates.push_back(c);
                    if (collector) (*collector)(i, c);
                  });
  return iterates;
}

Selection select_best_candidate(std::span<const Point> candidates, const SetFamily& family,
                                std::size_t sample_size, Rng& rng) {
  if (candidates.empty()) throw ConfigError("candidate list must be non-empty");
  if (sample_size == 0) throw ConfigError("selection sample size must be positive");
  for (const auto& c : candidates) require_same_dim(c.size(), family.dim());
  return detail::select_in(EuclideanSpace(family), candidates, sample_size, rng);
}

SolveResult solve_set_median(const SetFamily& family, const SolverConfig& config) {
  config.validate();
  if (config.reduce_sets) {
    const BallSpace space(family, reduce_family(family, *config.reduce_sets));
    auto solved = detail::solve_in(space, config);
    solved.diagnostics.surrogate_cost = reduced_objective(solved.center, space.balls());
    return {std::move(solved.center), solved.cost, std::move(solved.diagnostics)};
  }
  auto solved = detail::solve_in(EuclideanSpace(family), config);
  return {std::move(solved.center), solved.cost, std::move(solved.diagnostics)};
}

}  // namespace probball
