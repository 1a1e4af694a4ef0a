#include <cmath>

#include <gtest/gtest.h>

#include "probball/instances.hpp"
#include "probball/oracle.hpp"
#include "probball/probseb.hpp"
#include "test_util.hpp"

namespace probball::oracle {
namespace {

using testing::certain;
using testing::copies_of;
using testing::family_of;
using testing::pt;
using testing::set_of;

TEST(OracleSetMedian, TwoPoints) {
  const auto best = oracle_set_median(family_of({set_of({{-1, 0}}), set_of({{1, 0}})}), 2000);
  EXPECT_NEAR(best.cost, 2.0, 1e-4);
}

TEST(OracleSetMedian, IdenticalSingletons) {
  const auto best = oracle_set_median(copies_of(pt({1, -4, 2}), 6), 500);
  EXPECT_NEAR(best.cost, 0.0, 1e-9);
  EXPECT_LE((best.center - pt({1, -4, 2})).norm(), 1e-9);
}

TEST(OracleSetMedian, EquilateralTriangleFermatPoint) {
  const double h = std::sqrt(3.0) / 2.0;
  const auto best = oracle_set_median(family_of({set_of({{0, 0}}), set_of({{1, 0}}), set_of({{0.5, h}})}), 2000);
  EXPECT_NEAR(best.cost, std::sqrt(3.0), 1e-3);
  EXPECT_LE((best.center - pt({0.5, h / 3.0})).norm(), 1e-3);
}

TEST(OracleSetMedian, NeverWorseThanInputPoints) {
  Rng rng(1);
  const auto fam = random_set_family(20, 3, 3, 0.0, 10.0, rng);
  const auto best = oracle_set_median(fam, 1000);
  EXPECT_NEAR(best.cost, set_median_cost(fam, best.center), 1e-12);
  for (const auto& s : fam) {
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_LE(best.cost, set_median_cost(fam, s.point(i)));
  }
}

TEST(OracleSetMedian, StableAcrossThreadCounts) {
  Rng rng(2);
  const auto fam = random_set_family(15, 3, 2, 0.0, 10.0, rng);
  SetMedianOptions opts;
  const auto a = oracle_set_median(fam, 500, opts);
  opts.threads = 4;
  const auto b = oracle_set_median(fam, 500, opts);
  EXPECT_EQ(a.center, b.center);
  EXPECT_EQ(a.cost, b.cost);
}

TEST(OraclePseb, TwoCertainPoints) {
  const ProbInstance inst({certain(pt({-1, 0})), certain(pt({1, 0}))}, 2);
  const auto best = oracle_pseb(inst, default_grid_step(inst));
  EXPECT_NEAR(best.cost, 1.0, 1e-3);
  EXPECT_LE(best.center.norm(), 1e-2);
}

TEST(OraclePseb, AllAbsent) {
  const ProbInstance inst({DiscreteDistribution({{std::nullopt, 1.0}})}, 2);
  EXPECT_EQ(oracle_pseb(inst, 0.5).cost, 0.0);
}

TEST(OraclePseb, SymmetricCoin) {
  const ProbInstance inst({DiscreteDistribution({{pt({0, 0}), 0.5}, {pt({2, 0}), 0.5}})}, 2);
  const auto best = oracle_pseb(inst, default_grid_step(inst));
  EXPECT_NEAR(best.cost, 1.0, 1e-9);
  // Every point of the segment between the two outcomes is optimal.
  EXPECT_NEAR(best.center[1], 0.0, 1e-9);
  EXPECT_GE(best.center[0], -1e-9);
  EXPECT_LE(best.center[0], 2.0 + 1e-9);
}

TEST(OraclePseb, RejectsHighDimensions) {
  const ProbInstance inst({certain(pt({0, 0, 0}))}, 3);
  EXPECT_THROW(oracle_pseb(inst, 0.1), std::invalid_argument);
}

TEST(OraclePseb, CostMatchesSolverExpectation) {
  Rng rng(3);
  const auto inst = random_prob_instance(4, 3, 2, 0.0, 10.0, 0.25, rng);
  const auto best = oracle_pseb(inst, default_grid_step(inst));
  EXPECT_NEAR(best.cost, expected_cost(best.center, inst), 1e-9 * (1 + best.cost));
  EXPECT_NEAR(pseb_cost(inst, best.center), best.cost, 1e-12 * (1 + best.cost));
}

TEST(Oracles, AgreeOnDeterministicSingletons) {
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    const auto fam = random_set_family(4, 1, 2, 0.0, 10.0, rng);
    // The only realization of the certain instance is the whole point set,
    // so its cost is a single-set median problem.
    std::vector<DiscreteDistribution> dists;
    std::vector<Point> pts;
    for (const auto& s : fam) {
      dists.push_back(certain(s.point(0)));
      pts.push_back(s.point(0));
    }
    const ProbInstance inst(std::move(dists), 2);
    const SetFamily one(std::vector<PointSet>{PointSet::from_points(pts)});
    EXPECT_NEAR(oracle_pseb(inst, default_grid_step(inst)).cost, oracle_set_median(one, 2000).cost, 1e-3);
  }
}

}  // namespace
}  // namespace probball::oracle
