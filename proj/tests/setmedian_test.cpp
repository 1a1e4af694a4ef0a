#include <cmath>

#include <gtest/gtest.h>

#include "probball/errors.hpp"
#include "probball/instances.hpp"
#include "probball/oracle.hpp"
#include "probball/setmedian.hpp"
#include "test_util.hpp"

namespace probball {
namespace {

using testing::copies_of;
using testing::family_of;
using testing::pt;
using testing::set_of;

TEST(SolverConfig, DerivedCounts) {
  const auto practical = SolverConfig::practical(0.1);
  EXPECT_EQ(practical.iterations(), 6400u);       // (8 / 0.1)^2
  EXPECT_EQ(practical.step_size_count(), 16u);    // ceil(log2(2e4)) + 1
  EXPECT_EQ(practical.repetition_count(), 4u);    // ceil(log2(10))
  const auto paper = SolverConfig::paper_faithful(0.1);
  EXPECT_EQ(paper.iterations(), 462400u);         // (68 / 0.1)^2
  EXPECT_EQ(SolverConfig::paper_faithful(0.5).step_size_count(), 6u);  // log2(32) + 1
  // ceil(64 / 0.04 * ln 16) = ceil(4436.14...)
  EXPECT_EQ(SolverConfig::paper_faithful(0.2).selection_sample_size(2), 4437u);
}

TEST(SolverConfig, RejectsOutOfRangeParameters) {
  EXPECT_THROW(SolverConfig::practical(0.0).validate(), ConfigError);
  EXPECT_THROW(SolverConfig::practical(1.0).validate(), ConfigError);
  EXPECT_THROW(SolverConfig::practical(0.1, 0.0).validate(), ConfigError);
  auto paper = SolverConfig::paper_faithful(0.1);
  paper.c_iters = 8;
  EXPECT_THROW(paper.validate(), ConfigError);
  auto reps = SolverConfig::practical(0.1);
  reps.repetitions = 0;
  EXPECT_THROW(reps.validate(), ConfigError);
}

TEST(ExactSubgradient, SingleSingleton) {
  const auto g = exact_subgradient(pt({3, 4}), family_of({set_of({{0, 0}})}));
  EXPECT_NEAR(g.direction[0], 0.6, 1e-15);
  EXPECT_NEAR(g.direction[1], 0.8, 1e-15);
  EXPECT_FALSE(g.source_index.has_value());
}

TEST(ExactSubgradient, ZeroWhenCenterIsTheWitness) {
  const auto g = exact_subgradient(pt({1, 2}), family_of({set_of({{1, 2}})}));
  EXPECT_EQ(g.direction.norm(), 0.0);
}

TEST(ExactSubgradient, SumsUnitDirections) {
  const auto g = exact_subgradient(pt({0, 0}), family_of({set_of({{1, 0}}), set_of({{0, 1}})}));
  EXPECT_DOUBLE_EQ(g.direction[0], -1.0);
  EXPECT_DOUBLE_EQ(g.direction[1], -1.0);
}

TEST(ExactSubgradient, SatisfiesSubgradientInequality) {
  Rng rng(7);
  const SetFamily fam = random_set_family(25, 4, 3, 0.0, 10.0, rng);
  for (int t = 0; t < 2000; ++t) {
    const Point c = Point::NullaryExpr(3, [&] { return -2.0 + 14.0 * uniform01(rng); });
    const Point y = Point::NullaryExpr(3, [&] { return -2.0 + 14.0 * uniform01(rng); });
    const auto g = exact_subgradient(c, fam);
    EXPECT_GE(g.direction.dot(c - y), objective(c, fam) - objective(y, fam) - 1e-9);
  }
}

TEST(StochasticSubgradient, MatchesExactWhenOneSet) {
  const auto fam = family_of({set_of({{1, 1}, {4, -3}})});
  Rng rng(1);
  const auto s = stochastic_subgradient(pt({0, 0}), fam, rng);
  EXPECT_TRUE(s.direction.isApprox(exact_subgradient(pt({0, 0}), fam).direction, 1e-15));
  EXPECT_EQ(s.source_index, 0u);
}

TEST(StochasticSubgradient, UnitOrZeroAndUnbiased) {
  Rng gen(99);
  const SetFamily fam = random_set_family(12, 3, 2, 0.0, 10.0, gen);
  const Point c = pt({4.0, 6.0});
  const Point expected = exact_subgradient(c, fam).direction / static_cast<double>(fam.size());
  constexpr int kDraws = 100000;
  Point mean = Point::Zero(2);
  Rng rng(5);
  for (int k = 0; k < kDraws; ++k) {
    const auto s = stochastic_subgradient(c, fam, rng);
    const double norm = s.direction.norm();
    ASSERT_TRUE(norm == 0.0 || std::abs(norm - 1.0) <= 1e-12);
    mean += s.direction;
  }
  mean /= kDraws;
  const double tol = 4.0 / std::sqrt(static_cast<double>(kDraws));
  EXPECT_NEAR(mean[0], expected[0], tol);
  EXPECT_NEAR(mean[1], expected[1], tol);
}

TEST(PickInitialCenter, SingleSet) {
  Rng rng(3);
  EXPECT_EQ(pick_initial_center(family_of({set_of({{2, 7}})}), rng), pt({2, 7}));
}

TEST(PickInitialCenter, UniformOverSets) {
  const auto fam = family_of({set_of({{0, 0}}), set_of({{1, 0}, {5, 5}}), set_of({{2, 0}}), set_of({{3, 0}})});
  Rng rng(11);
  constexpr int kDraws = 40000;
  std::vector<int> hits(4, 0);
  for (int k = 0; k < kDraws; ++k) ++hits[static_cast<std::size_t>(pick_initial_center(fam, rng)[0])];
  const double sigma = std::sqrt(kDraws * 0.25 * 0.75);
  for (int h : hits) EXPECT_NEAR(h, kDraws / 4.0, 4.0 * sigma);
}

TEST(PickInitialCenter, IdenticalSetsGiveMemberPoint) {
  const auto fam = copies_of(pt({1.5, -2}), 5);
  Rng rng(4);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(pick_initial_center(fam, rng), pt({1.5, -2}));
}

TEST(EstimateRadius, ZeroForCopiesOfOnePoint) {
  Rng rng(2);
  const auto est = estimate_radius(copies_of(pt({3, 3}), 9), SolverConfig::practical(0.1), rng);
  EXPECT_EQ(est.c0, pt({3, 3}));
  EXPECT_EQ(est.r_tilde, 0.0);
  EXPECT_EQ(est.sample_indices.size(), 10u);
}

TEST(EstimateRadius, SumsSampledDistances) {
  const auto fam = family_of({set_of({{0, 0}}), set_of({{10, 0}})});
  const std::vector<std::size_t> both{0, 1};
  EXPECT_DOUBLE_EQ(radius_from_sample(pt({0, 0}), fam, both), 10.0);
  Rng rng(8);
  const auto est = estimate_radius(fam, SolverConfig::practical(0.5), rng);
  EXPECT_EQ(est.sample_indices.size(), 2u);
  EXPECT_DOUBLE_EQ(est.r_tilde, radius_from_sample(est.c0, fam, est.sample_indices));
}

TEST(EstimateRadius, GuaranteeHoldsWithConstantProbability) {
  Rng gen(12);
  const SetFamily fam = random_set_family(40, 3, 2, 0.0, 10.0, gen);
  const auto best = oracle::oracle_set_median(fam, 2000);
  const double avg = best.cost / static_cast<double>(fam.size());
  const double eps = 0.1;
  const auto config = SolverConfig::practical(eps);
  Rng rng(13);
  int good = 0;
  constexpr int kTrials = 400;
  for (int t = 0; t < kTrials; ++t) {
    const auto est = estimate_radius(fam, config, rng);
    const double dist = (est.c0 - best.center).norm();
    const bool case_a = eps * avg <= est.r_tilde && est.r_tilde <= 2.0 / (eps * eps * eps) * avg &&
                        dist <= 8.0 * avg;
    const bool case_b = dist <= 4.0 * eps * avg;
    good += (case_a || case_b) ? 1 : 0;
  }
  EXPECT_GE(good, 3 * kTrials / 4);
}

TEST(SgdRun, SingleSetMovesExactlyOneStep) {
  const auto fam = family_of({set_of({{0, 0}})});
  Rng rng(1);
  const auto its = sgd_run(pt({3, 4}), fam, 0.5, 1, rng);
  ASSERT_EQ(its.size(), 2u);
  EXPECT_NEAR(its[1][0], 3 - 0.5 * 0.6, 1e-15);
  EXPECT_NEAR(its[1][1], 4 - 0.5 * 0.8, 1e-15);
}

TEST(SgdRun, EveryStepHasLengthZeroOrStep) {
  Rng gen(21);
  const SetFamily fam = random_set_family(10, 3, 3, 0.0, 5.0, gen);
  Rng rng(22);
  constexpr double kStep = 0.37;
  const auto its = sgd_run(pt({0, 0, 0}), fam, kStep, 2000, rng);
  for (std::size_t i = 1; i < its.size(); ++i) {
    const double len = (its[i] - its[i - 1]).norm();
    EXPECT_TRUE(len == 0.0 || std::abs(len - kStep) <= 1e-9) << "step " << i << " length " << len;
  }
}

TEST(SgdRun, IteratesStayWithinReachOfTwoPointsOnALine) {
  const auto fam = family_of({set_of({{0}}), set_of({{1}})});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    for (const auto& c : sgd_run(pt({0}), fam, 0.25, 400, rng)) {
      EXPECT_GE(c[0], -0.25 - 1e-12);
      EXPECT_LE(c[0], 1.25 + 1e-12);
    }
  }
}

TEST(SgdRun, RejectsNonPositiveStep) {
  Rng rng(0);
  EXPECT_THROW(sgd_run(pt({0}), family_of({set_of({{1}})}), 0.0, 3, rng), ConfigError);
}

TEST(CandidateCollector, PracticalBudgetKeepsStartAndLast) {
  CandidateCollector<int> keep(Mode::kPractical, 10);
  keep.begin_run(999);
  for (int i = 0; i <= 999; ++i) keep(static_cast<std::size_t>(i), i);
  const auto& c = keep.candidates();
  EXPECT_LE(c.size(), 11u);
  EXPECT_EQ(c.front(), 0);
  EXPECT_EQ(c.back(), 999);
  CandidateCollector<int> all(Mode::kPaperFaithful, 10);
  all.begin_run(999);
  for (int i = 0; i <= 999; ++i) all(static_cast<std::size_t>(i), i);
  EXPECT_EQ(all.candidates().size(), 1000u);
}

TEST(SelectBestCandidate, SingleCandidate) {
  Rng rng(0);
  const std::vector<Point> one{pt({9, 9})};
  EXPECT_EQ(select_best_candidate(one, family_of({set_of({{0, 0}})}), 5, rng).index, 0u);
}

TEST(SelectBestCandidate, CopiesMakeSamplingIrrelevant) {
  const auto fam = SetFamily(std::vector<PointSet>(6, set_of({{0, 0}, {2, 0}})));
  const std::vector<Point> cands{pt({5, 5}), pt({1, 0}), pt({0, 0}), pt({1, 1})};
  Rng rng(6);
  EXPECT_EQ(select_best_candidate(cands, fam, 3, rng).index, 1u);
}

TEST(SelectBestCandidate, GoodCandidateWinsWithHighProbability) {
  // Sets alternate between {-1} and {1}. Candidate 0 (at 0) costs 1 per set,
  // candidate 1 (at 2) costs 3 or 1, so the ratio of objectives is 2.
  std::vector<PointSet> sets;
  for (int i = 0; i < 20; ++i) sets.push_back(set_of({{i % 2 == 0 ? -1.0 : 1.0}}));
  const SetFamily fam(std::move(sets));
  const std::vector<Point> cands{pt({0}), pt({2})};
  ASSERT_DOUBLE_EQ(objective(cands[1], fam), 2.0 * objective(cands[0], fam));
  const double eps = 0.2;
  const std::size_t q = SolverConfig::paper_faithful(eps).selection_sample_size(2);
  Rng rng(17);
  int wrong = 0;
  for (int t = 0; t < 1000; ++t) wrong += select_best_candidate(cands, fam, q, rng).index != 0 ? 1 : 0;
  const double bound = 2.0 * std::exp(-eps * eps * static_cast<double>(q) / 64.0);
  EXPECT_LE(wrong / 1000.0, std::min(0.2, bound + 0.05));
}

TEST(SolveSetMedian, IdenticalSingletonsAreSolvedExactly) {
  const auto r = solve_set_median(copies_of(pt({1, 2, 3}), 8), SolverConfig::practical(0.1));
  EXPECT_EQ(r.center, pt({1, 2, 3}));
  EXPECT_EQ(r.cost_estimate, 0.0);
  EXPECT_TRUE(r.diagnostics.degenerate);
}

TEST(SolveSetMedian, TwoPointMedian) {
  const auto fam = family_of({set_of({{-1, 0}}), set_of({{1, 0}})});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = solve_set_median(fam, SolverConfig::practical(0.1, 0.1, seed));
    EXPECT_LE(r.cost_estimate, 2.2);
    EXPECT_DOUBLE_EQ(r.cost_estimate, objective(r.center, fam));
  }
}

TEST(SolveSetMedian, RandomInstancesWithinFactorOfOracle) {
  Rng gen(31);
  int within = 0;
  for (int t = 0; t < 10; ++t) {
    const SetFamily fam = random_set_family(50, 4, 3, 0.0, 10.0, gen);
    const auto r = solve_set_median(fam, SolverConfig::practical(0.1, 0.1, static_cast<std::uint64_t>(t)));
    within += r.cost_estimate <= 1.1 * oracle::oracle_set_median(fam, 1000).cost ? 1 : 0;
  }
  EXPECT_GE(within, 9);
}

TEST(SolveSetMedian, ReturnsBestRepetition) {
  Rng gen(41);
  const SetFamily fam = random_set_family(30, 3, 2, 0.0, 10.0, gen);
  auto config = SolverConfig::practical(0.2, 0.01, 5);
  const auto r = solve_set_median(fam, config);
  ASSERT_EQ(r.diagnostics.repetition_costs.size(), config.repetition_count());
  for (double c : r.diagnostics.repetition_costs) EXPECT_LE(r.cost_estimate, c);
  EXPECT_EQ(r.cost_estimate, r.diagnostics.repetition_costs[r.diagnostics.winning_repetition]);
}

TEST(SolveSetMedian, PaperModeKeepsEveryIterate) {
  const auto fam = family_of({set_of({{0, 0}, {1, 1}}), set_of({{4, 0}}), set_of({{0, 3}, {2, 2}})});
  auto config = SolverConfig::paper_faithful(0.5, 0.5, 1);
  const auto r = solve_set_median(fam, config);
  ASSERT_FALSE(r.diagnostics.degenerate);
  EXPECT_EQ(r.diagnostics.repetitions, 1u);
  EXPECT_EQ(r.diagnostics.candidates_generated, (config.iterations() + 1) * config.step_size_count());
  EXPECT_EQ(r.diagnostics.iterations_total, config.iterations() * config.step_size_count());
}

TEST(SolveSetMedian, DeterministicAcrossThreadCounts) {
  Rng gen(51);
  const SetFamily fam = random_set_family(25, 3, 3, 0.0, 10.0, gen);
  auto config = SolverConfig::practical(0.1, 0.05, 77);
  const auto a = solve_set_median(fam, config);
  config.threads = 4;
  const auto b = solve_set_median(fam, config);
  EXPECT_EQ(a.center, b.center);
  EXPECT_EQ(a.cost_estimate, b.cost_estimate);
  EXPECT_EQ(a.diagnostics.repetition_costs, b.diagnostics.repetition_costs);
}

TEST(SolveSetMedian, BallReductionStaysWithinItsFactor) {
  Rng gen(61);
  const SetFamily fam = random_set_family(30, 6, 3, 0.0, 10.0, gen);
  auto config = SolverConfig::practical(0.1, 0.1, 3);
  config.reduce_sets = 0.1;
  const auto r = solve_set_median(fam, config);
  ASSERT_TRUE(r.diagnostics.surrogate_cost.has_value());
  const double best = oracle::oracle_set_median(fam, 1000).cost;
  EXPECT_GE(r.cost_estimate, best - 1e-9);
  EXPECT_LE(r.cost_estimate, std::sqrt(2.0) * 1.1 * 1.1 * best);
}

TEST(FixedStepDescent, MeanGapBelowAnalyticBound) {
  // Optimum f* = 2 on the segment between the two points.
  const auto fam = family_of({set_of({{-1, 0}}), set_of({{1, 0}})});
  const Point c0 = pt({0, 3});
  const double radius = 3.0;  // distance from c0 to the nearest optimum (0, 0)
  constexpr std::size_t kIters = 100;
  const double step = radius / std::sqrt(kIters + 1.0);
  double gap = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : sgd_run(c0, fam, step, kIters, rng)) best = std::min(best, objective(c, fam));
    gap += best - 2.0;
  }
  gap /= 200.0;
  const double bound = 2.0 * (radius * radius + (kIters + 1) * step * step) / (2.0 * (kIters + 1) * step);
  EXPECT_LE(gap, bound);
}

}  // namespace
}  // namespace probball
