#include "probball/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "probball/errors.hpp"

namespace probball {

PointSet::PointSet(Eigen::MatrixXd columns) : points_(std::move(columns)) {
  if (points_.cols() == 0) throw InstanceError("point set must be non-empty");
  if (points_.rows() == 0) throw InstanceError("points must have dimension >= 1");
  if (!points_.allFinite()) throw InstanceError("point coordinates must be finite");
}

PointSet PointSet::from_points(std::span<const Point> points) {
  if (points.empty()) throw InstanceError("point set must be non-empty");
  const Eigen::Index d = points.front().size();
  Eigen::MatrixXd columns(d, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_same_dim(points[i].size(), d);
    columns.col(static_cast<Eigen::Index>(i)) = points[i];
  }
  return PointSet(std::move(columns));
}

SetFamily::SetFamily(std::vector<PointSet> sets) : sets_(std::move(sets)) {
  if (sets_.empty()) throw InstanceError("set family must contain at least one set");
  dim_ = sets_.front().dim();
  for (const auto& s : sets_) {
    require_same_dim(s.dim(), dim_);
    n_max_ = std::max(n_max_, s.size());
  }
}

void require_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw InstanceError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Furthest max_distance(PointRef c, const PointSet& set) {
  require_same_dim(c.size(), set.dim());
  const auto& pts = set.matrix();
  double best = -1.0;
  std::size_t witness = 0;
  for (Eigen::Index j = 0; j < pts.cols(); ++j) {
    const double sq = (pts.col(j) - c).squaredNorm();
    if (sq > best) {
      best = sq;
      witness = static_cast<std::size_t>(j);
    }
  }
  return {std::sqrt(best), witness};
}

namespace {

std::vector<std::vector<double>> canonical(const PointSet& set) {
  std::vector<std::vector<double>> pts;
  pts.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto col = set.point(i);
    pts.emplace_back(col.data(), col.data() + col.size());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

double set_metric(const PointSet& a, const PointSet& b) {
  require_same_dim(a.dim(), b.dim());
  if (canonical(a) == canonical(b)) return 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    best = std::max(best, max_distance(a.point(i), b).value);
  }
  return best;
}

double objective(PointRef c, const SetFamily& family) {
  require_same_dim(c.size(), family.dim());
  double total = 0.0;
  for (const auto& set : family) total += max_distance(c, set).value;
  return total;
}

}  // namespace probball
