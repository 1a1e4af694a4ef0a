#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace probball {

using Point = Eigen::VectorXd;
using PointRef = Eigen::Ref<const Eigen::VectorXd>;

/// Result of a furthest-point query: the distance and the index of the
/// attaining point (lowest index on ties).
struct Furthest {
  double value = 0.0;
  std::size_t witness = 0;
};

/// A finite, non-empty set of points in R^d, stored column-wise.
class PointSet {
 public:
  /// Throws InstanceError when `columns` has no columns, zero rows, or a
  /// non-finite entry.
  explicit PointSet(Eigen::MatrixXd columns);

  static PointSet from_points(std::span<const Point> points);

  std::size_t size() const { return static_cast<std::size_t>(points_.cols()); }
  Eigen::Index dim() const { return points_.rows(); }
  Eigen::MatrixXd::ConstColXpr point(std::size_t i) const {
    return points_.col(static_cast<Eigen::Index>(i));
  }
  const Eigen::MatrixXd& matrix() const { return points_; }

 private:
  Eigen::MatrixXd points_;
};

/// The input family {P_1, ..., P_N}. All sets share one dimension.
class SetFamily {
 public:
  explicit SetFamily(std::vector<PointSet> sets);

  std::size_t size() const { return sets_.size(); }
  Eigen::Index dim() const { return dim_; }
  std::size_t n_max() const { return n_max_; }

  const PointSet& operator[](std::size_t i) const { return sets_[i]; }
  /// Bounds-checked access; throws std::out_of_range.
  const PointSet& at(std::size_t i) const { return sets_.at(i); }
  auto begin() const { return sets_.begin(); }
  auto end() const { return sets_.end(); }

 private:
  std::vector<PointSet> sets_;
  Eigen::Index dim_ = 0;
  std::size_t n_max_ = 0;
};

/// Throws InstanceError unless both dimensions agree.
void require_same_dim(Eigen::Index a, Eigen::Index b);

/// max_{p in P} ||c - p|| together with its witness.
Furthest max_distance(PointRef c, const PointSet& set);

/// The max-distance metric on finite sets: 0 for equal sets, otherwise the
/// largest pairwise distance.
double set_metric(const PointSet& a, const PointSet& b);

/// Set-median objective f(c) = sum_i m(c, P_i).
double objective(PointRef c, const SetFamily& family);

}  // namespace probball
