#pragma once

#include <cstddef>

#include "probball/geometry.hpp"
#include "probball/probseb.hpp"
#include "probball/rng.hpp"

namespace probball {

/// N sets of n points, coordinates uniform in [lo, hi]^d.
SetFamily random_set_family(std::size_t sets, std::size_t points_per_set, Eigen::Index dim, double lo,
                            double hi, Rng& rng);

/// n distributions over z outcomes, coordinates uniform in [lo, hi]^d.
/// Each outcome is absent with probability absent_rate; probabilities are
/// uniform random weights normalized to one.
ProbInstance random_prob_instance(std::size_t distributions, std::size_t outcomes, Eigen::Index dim,
                                  double lo, double hi, double absent_rate, Rng& rng);

/// Rescales every present probability by target / presence_mass and moves the
/// remainder onto the absent outcome. Requires target <= presence_mass.
ProbInstance with_presence_mass(const ProbInstance& instance, double target);

}  // namespace probball
