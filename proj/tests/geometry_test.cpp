#include <cmath>

#include <gtest/gtest.h>

#include "probball/errors.hpp"
#include "probball/geometry.hpp"
#include "probball/instances.hpp"
#include "test_util.hpp"

namespace probball {
namespace {

using testing::family_of;
using testing::pt;
using testing::set_of;

TEST(MaxDistance, ThreeFourFive) {
  const auto r = max_distance(pt({0, 0}), set_of({{3, 4}}));
  EXPECT_DOUBLE_EQ(r.value, 5.0);
  EXPECT_EQ(r.witness, 0u);
}

TEST(MaxDistance, CenterOnTheOnlyPoint) {
  const auto r = max_distance(pt({1, 1}), set_of({{1, 1}}));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.witness, 0u);
}

TEST(MaxDistance, PicksFurthestOfThree) {
  // norms 1, 2, sqrt(2)
  const auto r = max_distance(pt({0, 0}), set_of({{1, 0}, {0, 2}, {-1, -1}}));
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  EXPECT_EQ(r.witness, 1u);
}

TEST(MaxDistance, TiesGoToLowestIndex) {
  const auto r = max_distance(pt({0, 0}), set_of({{1, 0}, {0, 3}, {3, 0}, {0, -3}}));
  EXPECT_EQ(r.witness, 1u);
}

TEST(MaxDistance, DimensionMismatchThrows) {
  EXPECT_THROW(max_distance(pt({0, 0, 0}), set_of({{1, 0}})), InstanceError);
}

TEST(SetMetric, IdenticalSetsAreAtZero) {
  const auto a = set_of({{0, 0}, {1, 0}});
  EXPECT_EQ(set_metric(a, a), 0.0);
  // Equality is as sets: order and repeats do not matter.
  EXPECT_EQ(set_metric(a, set_of({{1, 0}, {0, 0}, {1, 0}})), 0.0);
}

TEST(SetMetric, Singletons) { EXPECT_DOUBLE_EQ(set_metric(set_of({{0, 0}}), set_of({{3, 4}})), 5.0); }

TEST(SetMetric, LargestPairwiseDistance) {
  EXPECT_DOUBLE_EQ(set_metric(set_of({{0, 0}, {2, 0}}), set_of({{0, 1}})), std::sqrt(5.0));
}

TEST(SetMetric, DimensionMismatchThrows) {
  EXPECT_THROW(set_metric(set_of({{0, 0}}), set_of({{0, 0, 0}})), InstanceError);
}

TEST(Objective, SumOfUnitDistances) {
  EXPECT_DOUBLE_EQ(objective(pt({0, 0}), family_of({set_of({{1, 0}}), set_of({{0, 1}})})), 2.0);
}

TEST(Objective, SingleSetIsMaxDistance) {
  EXPECT_DOUBLE_EQ(objective(pt({0, 0}), family_of({set_of({{3, 4}, {0, 1}})})), 5.0);
}

TEST(Objective, ZeroAtCommonPoint) {
  const auto c = pt({2.5, -1.0});
  EXPECT_EQ(objective(c, testing::copies_of(c, 7)), 0.0);
}

TEST(PointSet, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(PointSet(Eigen::MatrixXd(2, 0)), InstanceError);
  Eigen::MatrixXd bad(2, 1);
  bad << 1.0, std::nan("");
  EXPECT_THROW(PointSet{bad}, InstanceError);
}

TEST(SetFamily, TracksLargestSetAndRejectsMixedDimensions) {
  const auto fam = family_of({set_of({{0, 0}}), set_of({{1, 1}, {2, 2}, {3, 3}})});
  EXPECT_EQ(fam.n_max(), 3u);
  EXPECT_EQ(fam.dim(), 2);
  EXPECT_THROW(family_of({set_of({{0, 0}}), set_of({{0, 0, 0}})}), InstanceError);
  EXPECT_THROW(SetFamily(std::vector<PointSet>{}), InstanceError);
}

// Randomized checks of the metric axioms, convexity and N-Lipschitz continuity.
class GeometryProperties : public ::testing::Test {
 protected:
  static constexpr int kTrials = 2000;
  static constexpr double kSlack = 1e-9;
  Rng rng{20240611};

  PointSet random_set(std::size_t max_points) {
    const std::size_t n = 1 + uniform_index(rng, max_points);
    return random_set_family(1, n, 3, -5.0, 5.0, rng)[0];
  }
  Point random_point(double lo, double hi) {
    Point p(3);
    for (int k = 0; k < 3; ++k) p[k] = lo + (hi - lo) * uniform01(rng);
    return p;
  }
};

TEST_F(GeometryProperties, SetMetricAxioms) {
  for (int t = 0; t < kTrials; ++t) {
    const auto a = random_set(5), b = random_set(5), c = random_set(5);
    const double ab = set_metric(a, b), ba = set_metric(b, a);
    EXPECT_GE(ab, 0.0);
    EXPECT_EQ(ab, ba);
    EXPECT_EQ(set_metric(a, a), 0.0);
    EXPECT_GT(ab, 0.0);  // continuous random sets are distinct
    EXPECT_LE(set_metric(a, c), ab + set_metric(b, c) + kSlack);
  }
}

TEST_F(GeometryProperties, ObjectiveIsConvex) {
  const SetFamily fam = random_set_family(20, 4, 3, -5.0, 5.0, rng);
  for (int t = 0; t < kTrials; ++t) {
    const Point x = random_point(-10, 10), y = random_point(-10, 10);
    const double lambda = uniform01(rng);
    const Point mid = lambda * x + (1.0 - lambda) * y;
    EXPECT_LE(objective(mid, fam), lambda * objective(x, fam) + (1 - lambda) * objective(y, fam) + kSlack);
  }
}

TEST_F(GeometryProperties, ObjectiveIsNLipschitz) {
  const SetFamily fam = random_set_family(15, 3, 3, -5.0, 5.0, rng);
  const double n = static_cast<double>(fam.size());
  for (int t = 0; t < kTrials; ++t) {
    const Point x = random_point(-10, 10), y = random_point(-10, 10);
    EXPECT_LE(std::abs(objective(x, fam) - objective(y, fam)), n * (x - y).norm() + kSlack);
  }
}

}  // namespace
}  // namespace probball
