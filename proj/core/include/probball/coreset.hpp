#pragma once

#include <span>
#include <vector>

#include "probball/geometry.hpp"

namespace probball {

struct Ball {
  Point center;
  double radius = 0.0;
};

/// Bădoiu-Clarkson: ceil(1/eps^2) steps of c <- c + (p - c) / (i + 1) toward
/// the current furthest point p. The radius is the furthest distance from the
/// final center, so the ball always contains the set.
Ball approx_meb(const PointSet& set, double eps_meb);

/// ||c - center|| + radius. Never below m(c, P) for the set the ball was
/// built from, and at most sqrt(2) (1 + eps_meb) times it.
double approx_furthest(const Ball& ball, PointRef c);

std::vector<Ball> reduce_family(const SetFamily& family, double eps_meb);

/// Set-median objective with every m(c, P_i) replaced by approx_furthest.
double reduced_objective(PointRef c, std::span<const Ball> balls);

}  // namespace probball
