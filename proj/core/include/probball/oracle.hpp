#pragma once

// Brute-force reference optima for desk-scale instances. Implemented with
// their own distance and objective code; nothing here calls into the solver.

#include <cstddef>
#include <cstdint>

#include "probball/geometry.hpp"
#include "probball/probseb.hpp"

namespace probball::oracle {

struct Optimum {
  Point center;
  double cost = 0.0;
};

struct SetMedianOptions {
  std::size_t starts = 32;
  std::uint64_t seed = 0x5eed;
  unsigned threads = 0;
};

/// Multi-start exact-subgradient descent with steps R_box / sqrt(t), followed
/// by coordinate-wise golden-section refinement. Starts are the centroid of
/// all points plus randomly chosen input points.
Optimum oracle_set_median(const SetFamily& family, std::size_t budget,
                          const SetMedianOptions& options = {});

/// Objective of the reference implementation, exposed for cross-checks.
double set_median_cost(const SetFamily& family, const Point& c);

/// Grid search (d <= 2) over the location bounding box padded by its
/// diameter, then three local refinements at a tenth of the step each.
/// Expected costs are enumerated exactly. Throws std::invalid_argument for
/// d > 2 and EnumerationCapExceeded past `cap` realizations.
Optimum oracle_pseb(const ProbInstance& instance, double grid_step,
                    std::uint64_t cap = 1'000'000);

/// Diameter of the present locations' bounding box divided by 40 (1 when
/// that diameter is zero).
double default_grid_step(const ProbInstance& instance);

/// Reference expected cost by enumeration.
double pseb_cost(const ProbInstance& instance, const Point& c, std::uint64_t cap = 1'000'000);

}  // namespace probball::oracle
