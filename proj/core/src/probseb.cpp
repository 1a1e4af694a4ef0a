#include "probball/probseb.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "probball/detail/counts.hpp"
#include "probball/errors.hpp"

namespace probball {

DiscreteDistribution::DiscreteDistribution(std::vector<Entry> entries) {
  if (entries.empty()) throw InstanceError("distribution must have at least one entry");
  double total = 0.0;
  std::optional<std::size_t> absent_slot;
  for (auto& e : entries) {
    if (!std::isfinite(e.prob) || e.prob < 0.0 || e.prob > 1.0) {
      throw InstanceError("probability must lie in [0, 1], got " + std::to_string(e.prob));
    }
    total += e.prob;
    if (!e.location) {
      if (absent_slot) {
        entries_[*absent_slot].prob += e.prob;
      } else {
        absent_slot = entries_.size();
        entries_.push_back(std::move(e));
      }
      continue;
    }
    if (e.location->size() == 0) throw InstanceError("locations must have dimension >= 1");
    if (!e.location->allFinite()) throw InstanceError("location coordinates must be finite");
    if (dim_ == 0) dim_ = e.location->size();
    require_same_dim(e.location->size(), dim_);
    entries_.push_back(std::move(e));
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InstanceError("probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

double DiscreteDistribution::absent_prob() const {
  for (const auto& e : entries_) {
    if (!e.location) return e.prob;
  }
  return 0.0;
}

ProbInstance::ProbInstance(std::vector<DiscreteDistribution> distributions, Eigen::Index dim)
    : distributions_(std::move(distributions)), dim_(dim) {
  if (distributions_.empty()) throw InstanceError("instance must contain at least one distribution");
  if (dim_ < 1) throw InstanceError("dimension must be >= 1");
  for (const auto& d : distributions_) {
    if (d.dim() != 0) require_same_dim(d.dim(), dim_);
  }
}

double presence_mass(const ProbInstance& instance) {
  double mass = 0.0;
  for (const auto& dist : instance) {
    for (const auto& e : dist.entries()) {
      if (e.location) mass += e.prob;
    }
  }
  return mass;
}

double nonempty_probability(const ProbInstance& instance) {
  double all_absent = 1.0;
  for (const auto& dist : instance) all_absent *= dist.absent_prob();
  return 1.0 - all_absent;
}

namespace {

void require_present_mass(const ProbInstance& instance) {
  if (!(presence_mass(instance) > 0.0)) {
    throw InstanceError("instance has no present location with positive probability");
  }
}

PointSet singleton(const Point& p) { return PointSet(Eigen::MatrixXd(p)); }

}  // namespace

SetFamily sample_locations_weighted(const ProbInstance& instance, std::size_t k, Rng& rng) {
  if (k == 0) throw ConfigError("sample size must be positive");
  require_present_mass(instance);

  // Exponential keys: item with weight w gets log(u) / w, u ~ U(0, 1]; each
  // of the k reservoirs keeps its maximum key.
  std::vector<double> best_key(k, -std::numeric_limits<double>::infinity());
  std::vector<const Point*> chosen(k, nullptr);
  for (const auto& dist : instance) {
    for (const auto& e : dist.entries()) {
      if (!e.location || e.prob <= 0.0) continue;
      for (std::size_t s = 0; s < k; ++s) {
        const double key = std::log(1.0 - uniform01(rng)) / e.prob;
        if (key > best_key[s]) {
          best_key[s] = key;
          chosen[s] = &*e.location;
        }
      }
    }
  }

  std::vector<PointSet> sets;
  sets.reserve(k);
  for (const Point* p : chosen) sets.push_back(singleton(*p));
  return SetFamily(std::move(sets));
}

Realization sample_realization(const ProbInstance& instance, Rng& rng) {
  Realization r;
  for (const auto& dist : instance) {
    const double u = uniform01(rng);
    const auto& entries = dist.entries();
    const Entry* pick = &entries.back();
    double acc = 0.0;
    for (const auto& e : entries) {
      acc += e.prob;
      if (u < acc) {
        pick = &e;
        break;
      }
    }
    if (pick->location) r.points.push_back(*pick->location);
  }
  return r;
}

RealizationSample sample_nonempty_realizations(const ProbInstance& instance, std::size_t k,
                                               std::uint64_t max_trials, Rng& rng) {
  if (k == 0) throw ConfigError("sample size must be positive");
  require_present_mass(instance);
  std::vector<PointSet> sets;
  sets.reserve(k);
  std::uint64_t trials = 0;
  while (sets.size() < k) {
    if (trials == max_trials) throw TrialsExhausted(trials, sets.size(), k);
    ++trials;
    Realization r = sample_realization(instance, rng);
    if (!r.points.empty()) sets.push_back(PointSet::from_points(r.points));
  }
  return {SetFamily(std::move(sets)), trials};
}

namespace {

// Depth-first enumeration carrying the product of probabilities and the
// running maximum; an absent draw contributes distance 0.
double enumerate(const std::vector<std::vector<std::pair<double, double>>>& table, std::size_t depth,
                 double prob, double running_max) {
  if (depth == table.size()) return prob * running_max;
  double total = 0.0;
  for (const auto& [p, dist] : table[depth]) {
    if (p == 0.0) continue;
    total += enumerate(table, depth + 1, prob * p, std::max(running_max, dist));
  }
  return total;
}

}  // namespace

double expected_cost(PointRef c, const ProbInstance& instance, std::uint64_t cap) {
  require_same_dim(c.size(), instance.dim());
  std::uint64_t tuples = 1;
  for (const auto& dist : instance) {
    if (tuples > cap / dist.size()) throw EnumerationCapExceeded(cap);
    tuples *= dist.size();
  }
  if (tuples > cap) throw EnumerationCapExceeded(cap);

  std::vector<std::vector<std::pair<double, double>>> table;
  table.reserve(instance.size());
  for (const auto& dist : instance) {
    auto& row = table.emplace_back();
    for (const auto& e : dist.entries()) {
      row.emplace_back(e.prob, e.location ? (*e.location - c).norm() : 0.0);
    }
  }
  return enumerate(table, 0, 1.0, 0.0);
}

double surrogate_cost(PointRef c, const ProbInstance& instance) {
  require_same_dim(c.size(), instance.dim());
  double total = 0.0;
  for (const auto& dist : instance) {
    for (const auto& e : dist.entries()) {
      if (e.location) total += e.prob * (*e.location - c).norm();
    }
  }
  return total;
}

std::size_t pseb_sample_size(const SolverConfig& config) {
  const double eps = config.epsilon;
  return std::max<std::size_t>(1, detail::ceil_count(config.c_select / (eps * eps) * std::log(1.0 / eps)));
}

SampledFamily sample_reduction(const ProbInstance& instance, const SolverConfig& config) {
  config.validate();
  require_present_mass(instance);
  Rng rng = phase_rng(config.seed, Phase::kSampling);
  const std::size_t k = pseb_sample_size(config);
  const double mass = presence_mass(instance);
  if (mass <= config.epsilon) {
    return {sample_locations_weighted(instance, k, rng), 1, 0, mass};
  }
  const std::uint64_t max_trials =
      config.max_trials ? *config.max_trials
                        : detail::ceil_count(8.0 * static_cast<double>(k) / config.epsilon);
  auto sample = sample_nonempty_realizations(instance, k, max_trials, rng);
  return {std::move(sample.family), 2, sample.trials, nonempty_probability(instance)};
}

SolveResult solve_pseb(const ProbInstance& instance, const SolverConfig& config) {
  SampledFamily sampled = sample_reduction(instance, config);
  SolveResult result = solve_set_median(sampled.family, config);
  const double k = static_cast<double>(sampled.family.size());
  result.diagnostics.family_cost = result.cost_estimate;
  result.diagnostics.sampling_case = sampled.sampling_case;
  result.diagnostics.samples = sampled.family.size();
  result.diagnostics.trials = sampled.trials;
  result.cost_estimate = sampled.cost_scale * result.cost_estimate / k;
  return result;
}

}  // namespace probball
