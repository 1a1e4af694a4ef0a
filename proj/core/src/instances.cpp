#include "probball/instances.hpp"

#include "probball/errors.hpp"

namespace probball {

namespace {

Point uniform_point(Eigen::Index dim, double lo, double hi, Rng& rng) {
  Point p(dim);
  for (Eigen::Index k = 0; k < dim; ++k) p[k] = lo + (hi - lo) * uniform01(rng);
  return p;
}

}  // namespace

SetFamily random_set_family(std::size_t sets, std::size_t points_per_set, Eigen::Index dim, double lo,
                            double hi, Rng& rng) {
  std::vector<PointSet> family;
  family.reserve(sets);
  for (std::size_t i = 0; i < sets; ++i) {
    Eigen::MatrixXd cols(dim, static_cast<Eigen::Index>(points_per_set));
    for (std::size_t j = 0; j < points_per_set; ++j) {
      cols.col(static_cast<Eigen::Index>(j)) = uniform_point(dim, lo, hi, rng);
    }
    family.emplace_back(std::move(cols));
  }
  return SetFamily(std::move(family));
}

ProbInstance random_prob_instance(std::size_t distributions, std::size_t outcomes, Eigen::Index dim,
                                  double lo, double hi, double absent_rate, Rng& rng) {
  std::vector<DiscreteDistribution> dists;
  dists.reserve(distributions);
  for (std::size_t i = 0; i < distributions; ++i) {
    std::vector<double> weights(outcomes);
    double total = 0.0;
    for (auto& w : weights) {
      w = 0.05 + uniform01(rng);
      total += w;
    }
    std::vector<Entry> entries;
    double assigned = 0.0;
    for (std::size_t j = 0; j < outcomes; ++j) {
      // The last weight absorbs rounding so the sum is exactly one.
      const double p = j + 1 == outcomes ? 1.0 - assigned : weights[j] / total;
      assigned += p;
      if (uniform01(rng) < absent_rate) {
        entries.push_back({std::nullopt, p});
      } else {
        entries.push_back({uniform_point(dim, lo, hi, rng), p});
      }
    }
    dists.emplace_back(std::move(entries));
  }
  return ProbInstance(std::move(dists), dim);
}

ProbInstance with_presence_mass(const ProbInstance& instance, double target) {
  const double mass = presence_mass(instance);
  if (!(target > 0.0) || target > mass) {
    throw ConfigError("target presence mass must lie in (0, current mass]");
  }
  const double factor = target / mass;
  std::vector<DiscreteDistribution> dists;
  for (const auto& dist : instance) {
    std::vector<Entry> entries;
    double present = 0.0;
    for (const auto& e : dist.entries()) {
      if (!e.location) continue;
      entries.push_back({e.location, e.prob * factor});
      present += e.prob * factor;
    }
    entries.push_back({std::nullopt, 1.0 - present});
    dists.emplace_back(std::move(entries));
  }
  return ProbInstance(std::move(dists), instance.dim());
}

}  // namespace probball
