#include "probball/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "probball/detail/parallel.hpp"
#include "probball/errors.hpp"

namespace probball::oracle {

namespace {

// Flat copy of a set family: coordinates of set i occupy
// data[offset[i] * dim, offset[i + 1] * dim).
struct FlatFamily {
  std::size_t dim = 0;
  std::vector<double> data;
  std::vector<std::size_t> offset{0};

  explicit FlatFamily(const SetFamily& family) : dim(static_cast<std::size_t>(family.dim())) {
    for (const auto& set : family) {
      const auto& m = set.matrix();
      data.insert(data.end(), m.data(), m.data() + m.size());
      offset.push_back(offset.back() + set.size());
    }
  }

  std::size_t sets() const { return offset.size() - 1; }
  const double* point(std::size_t k) const { return data.data() + k * dim; }
};

double dist(const double* a, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = a[k] - x[k];
    s += t * t;
  }
  return std::sqrt(s);
}

double cost(const FlatFamily& f, const std::vector<double>& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < f.sets(); ++i) {
    double worst = 0.0;
    for (std::size_t k = f.offset[i]; k < f.offset[i + 1]; ++k) worst = std::max(worst, dist(f.point(k), x));
    total += worst;
  }
  return total;
}

std::vector<double> subgradient(const FlatFamily& f, const std::vector<double>& x) {
  std::vector<double> g(f.dim, 0.0);
  for (std::size_t i = 0; i < f.sets(); ++i) {
    double worst = -1.0;
    std::size_t arg = f.offset[i];
    for (std::size_t k = f.offset[i]; k < f.offset[i + 1]; ++k) {
      const double d = dist(f.point(k), x);
      if (d > worst) {
        worst = d;
        arg = k;
      }
    }
    if (worst <= 0.0) continue;
    const double* p = f.point(arg);
    for (std::size_t c = 0; c < f.dim; ++c) g[c] += (x[c] - p[c]) / worst;
  }
  return g;
}

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

struct Run {
  std::vector<double> x;
  double value = 0.0;
};

// Normalized subgradient steps radius / sqrt(t); keeps the best iterate.
Run descend(const FlatFamily& f, std::vector<double> x, double radius, std::size_t budget) {
  Run best{x, cost(f, x)};
  for (std::size_t t = 1; t <= budget; ++t) {
    const auto g = subgradient(f, x);
    const double gn = norm(g);
    if (gn == 0.0) break;
    const double step = radius / std::sqrt(static_cast<double>(t));
    for (std::size_t c = 0; c < x.size(); ++c) x[c] -= step * g[c] / gn;
    const double v = cost(f, x);
    if (v < best.value) best = {x, v};
  }
  return best;
}

template <class Fn>
double golden_section(Fn&& fn, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = fn(c), fd = fn(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

// Coordinate sweeps with a shrinking bracket half-width.
Run refine(const FlatFamily& f, Run run, double width, double floor) {
  for (int sweep = 0; sweep < 200 && width > floor; ++sweep) {
    bool improved = false;
    for (std::size_t c = 0; c < run.x.size(); ++c) {
      std::vector<double> probe = run.x;
      auto along = [&](double v) {
        probe[c] = v;
        return cost(f, probe);
      };
      const double v = golden_section(along, run.x[c] - width, run.x[c] + width, floor);
      probe[c] = v;
      const double value = cost(f, probe);
      if (value < run.value) {
        run = {probe, value};
        improved = true;
      }
    }
    if (!improved) width *= 0.5;
  }
  return run;
}

}  // namespace

double set_median_cost(const SetFamily& family, const Point& c) {
  const FlatFamily f(family);
  if (static_cast<std::size_t>(c.size()) != f.dim) throw InstanceError("dimension mismatch");
  return cost(f, std::vector<double>(c.data(), c.data() + c.size()));
}

Optimum oracle_set_median(const SetFamily& family, std::size_t budget, const SetMedianOptions& options) {
  const FlatFamily f(family);
  const std::size_t total = f.offset.back();

  std::vector<double> lo(f.dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(f.dim, -std::numeric_limits<double>::infinity());
  std::vector<double> centroid(f.dim, 0.0);
  for (std::size_t k = 0; k < total; ++k) {
    for (std::size_t c = 0; c < f.dim; ++c) {
      lo[c] = std::min(lo[c], f.point(k)[c]);
      hi[c] = std::max(hi[c], f.point(k)[c]);
      centroid[c] += f.point(k)[c] / static_cast<double>(total);
    }
  }
  double box = 0.0;
  for (std::size_t c = 0; c < f.dim; ++c) box += (hi[c] - lo[c]) * (hi[c] - lo[c]);
  box = std::sqrt(box);

  std::vector<std::vector<double>> starts{centroid};
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 gen(options.seed);
  std::shuffle(order.begin(), order.end(), gen);
  for (std::size_t k = 0; k < order.size() && starts.size() < std::max<std::size_t>(1, options.starts); ++k) {
    starts.emplace_back(f.point(order[k]), f.point(order[k]) + f.dim);
  }

  if (box == 0.0) {
    return {Eigen::Map<const Eigen::VectorXd>(centroid.data(), static_cast<Eigen::Index>(f.dim)),
            cost(f, centroid)};
  }

  std::vector<Run> runs(starts.size());
  detail::for_each_index(starts.size(), options.threads, [&](std::size_t s) {
    runs[s] = descend(f, starts[s], box, budget);
  });
  Run best = runs.front();
  for (const auto& r : runs) {
    if (r.value < best.value) best = r;
  }

  // Restart from the winner with brackets shrunk to the final step length.
  double radius = box / std::sqrt(static_cast<double>(std::max<std::size_t>(budget, 1)));
  for (int stage = 0; stage < 3; ++stage) {
    Run next = descend(f, best.x, 4.0 * radius, budget);
    if (next.value < best.value) best = next;
    radius /= std::sqrt(static_cast<double>(std::max<std::size_t>(budget, 1)));
  }
  best = refine(f, best, 4.0 * box / std::sqrt(static_cast<double>(std::max<std::size_t>(budget, 1))),
                1e-10 * box);
  return {Eigen::Map<const Eigen::VectorXd>(best.x.data(), static_cast<Eigen::Index>(f.dim)), best.value};
}

namespace {

struct Outcome {
  double prob;
  bool present;
  std::vector<double> loc;
};

std::vector<std::vector<Outcome>> outcomes_of(const ProbInstance& instance) {
  std::vector<std::vector<Outcome>> table;
  for (const auto& dist : instance) {
    auto& row = table.emplace_back();
    for (const auto& e : dist.entries()) {
      if (e.location) {
        row.push_back({e.prob, true, std::vector<double>(e.location->data(),
                                                         e.location->data() + e.location->size())});
      } else {
        row.push_back({e.prob, false, {}});
      }
    }
  }
  return table;
}

void check_cap(const std::vector<std::vector<Outcome>>& table, std::uint64_t cap) {
  std::uint64_t tuples = 1;
  for (const auto& row : table) {
    if (tuples > cap / row.size()) throw EnumerationCapExceeded(cap);
    tuples *= row.size();
  }
}

// Odometer over all index tuples: probability of the tuple times the
// largest distance among present draws.
double enumerate_cost(const std::vector<std::vector<Outcome>>& table, const std::vector<double>& c) {
  std::vector<std::vector<double>> d(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (const auto& o : table[i]) d[i].push_back(o.present ? dist(o.loc.data(), c) : 0.0);
  }
  std::vector<std::size_t> idx(table.size(), 0);
  double total = 0.0;
  while (true) {
    double p = 1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      p *= table[i][idx[i]].prob;
      worst = std::max(worst, d[i][idx[i]]);
    }
    total += p * worst;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == table[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return total;
}

}  // namespace

double pseb_cost(const ProbInstance& instance, const Point& c, std::uint64_t cap) {
  const auto table = outcomes_of(instance);
  check_cap(table, cap);
  if (c.size() != instance.dim()) throw InstanceError("dimension mismatch");
  return enumerate_cost(table, std::vector<double>(c.data(), c.data() + c.size()));
}

double default_grid_step(const ProbInstance& instance) {
  const auto dim = static_cast<std::size_t>(instance.dim());
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  bool any = false;
  for (const auto& row : outcomes_of(instance)) {
    for (const auto& o : row) {
      if (!o.present) continue;
      any = true;
      for (std::size_t c = 0; c < dim; ++c) {
        lo[c] = std::min(lo[c], o.loc[c]);
        hi[c] = std::max(hi[c], o.loc[c]);
      }
    }
  }
  if (!any) return 1.0;
  double diameter = 0.0;
  for (std::size_t c = 0; c < dim; ++c) diameter += (hi[c] - lo[c]) * (hi[c] - lo[c]);
  diameter = std::sqrt(diameter);
  return diameter > 0.0 ? diameter / 40.0 : 1.0;
}

Optimum oracle_pseb(const ProbInstance& instance, double grid_step, std::uint64_t cap) {
  const auto dim = static_cast<std::size_t>(instance.dim());
  if (dim > 2) throw std::invalid_argument("oracle_pseb supports d <= 2");
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
  const auto table = outcomes_of(instance);
  check_cap(table, cap);

  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  bool any = false;
  for (const auto& row : table) {
    for (const auto& o : row) {
      if (!o.present) continue;
      any = true;
      for (std::size_t c = 0; c < dim; ++c) {
        lo[c] = std::min(lo[c], o.loc[c]);
        hi[c] = std::max(hi[c], o.loc[c]);
      }
    }
  }
  if (!any) return {Point::Zero(static_cast<Eigen::Index>(dim)), 0.0};

  double diameter = 0.0;
  for (std::size_t c = 0; c < dim; ++c) diameter += (hi[c] - lo[c]) * (hi[c] - lo[c]);
  diameter = std::sqrt(diameter);
  for (std::size_t c = 0; c < dim; ++c) {
    lo[c] -= diameter;
    hi[c] += diameter;
  }

  std::vector<double> best_x = lo;
  double best = enumerate_cost(table, best_x);
  auto scan = [&](const std::vector<double>& from, const std::vector<std::size_t>& counts, double step) {
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> x(dim);
    while (true) {
      for (std::size_t c = 0; c < dim; ++c) x[c] = from[c] + step * static_cast<double>(idx[c]);
      const double v = enumerate_cost(table, x);
      if (v < best) {
        best = v;
        best_x = x;
      }
      std::size_t c = 0;
      while (c < dim && ++idx[c] == counts[c]) idx[c++] = 0;
      if (c == dim) break;
    }
  };

  if (diameter == 0.0) {
    best_x = lo;
    best = enumerate_cost(table, best_x);
    return {Eigen::Map<const Eigen::VectorXd>(best_x.data(), static_cast<Eigen::Index>(dim)), best};
  }

  std::vector<std::size_t> counts(dim);
  double cells = 1.0;
  for (std::size_t c = 0; c < dim; ++c) {
    counts[c] = static_cast<std::size_t>(std::floor((hi[c] - lo[c]) / grid_step)) + 1;
    cells *= static_cast<double>(counts[c]);
  }
  if (cells > 1e8) throw std::invalid_argument("grid_step too small: more than 1e8 grid points");
  scan(lo, counts, grid_step);

  double step = grid_step;
  for (int level = 0; level < 3; ++level) {
    const double fine = step / 10.0;
    // Re-center the window until the best point stops moving, so narrow
    // diagonal valleys of the max-type cost are followed rather than cut.
    for (int moves = 0; moves < 200; ++moves) {
      const std::vector<double> anchor = best_x;
      std::vector<double> from(dim);
      for (std::size_t c = 0; c < dim; ++c) from[c] = anchor[c] - step;
      scan(from, std::vector<std::size_t>(dim, 21), fine);
      if (best_x == anchor) break;
    }
    step = fine;
  }
  return {Eigen::Map<const Eigen::VectorXd>(best_x.data(), static_cast<Eigen::Index>(dim)), best};
}

}  // namespace probball::oracle
