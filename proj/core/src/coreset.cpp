#include "probball/coreset.hpp"

#include "probball/detail/counts.hpp"
#include "probball/errors.hpp"

namespace probball {

Ball approx_meb(const PointSet& set, double eps_meb) {
  if (!(eps_meb > 0.0 && eps_meb < 1.0)) throw ConfigError("eps_meb must lie in (0, 1)");
  Point c = set.point(0);
  const std::size_t steps = detail::ceil_count(1.0 / (eps_meb * eps_meb));
  for (std::size_t i = 1; i <= steps; ++i) {
    const Furthest far = max_distance(c, set);
    if (far.value == 0.0) break;  // every point coincides with c
    c += (set.point(far.witness) - c) / static_cast<double>(i + 1);
  }
  const double radius = max_distance(c, set).value;
  return {std::move(c), radius};
}

double approx_furthest(const Ball& ball, PointRef c) {
  require_same_dim(c.size(), ball.center.size());
  return (c - ball.center).norm() + ball.radius;
}

std::vector<Ball> reduce_family(const SetFamily& family, double eps_meb) {
  std::vector<Ball> balls;
  balls.reserve(family.size());
  for (const auto& set : family) balls.push_back(approx_meb(set, eps_meb));
  return balls;
}

double reduced_objective(PointRef c, std::span<const Ball> balls) {
  double total = 0.0;
  for (const auto& b : balls) total += approx_furthest(b, c);
  return total;
}

}  // namespace probball
