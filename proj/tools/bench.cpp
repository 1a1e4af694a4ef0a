#include "bench.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "probball/errors.hpp"
#include "probball/instances.hpp"
#include "probball/oracle.hpp"
#include "probball/probseb.hpp"
#include "probball/setmedian.hpp"

namespace probball::cli {

namespace {

struct Row {
  std::string name;
  double cost = 0.0;
  double oracle_cost = 0.0;
  long long millis = 0;
};

struct SetMedianCase {
  std::size_t sets, points;
  Eigen::Index dim;
};

struct PsebCase {
  std::size_t distributions, outcomes;
  bool small_mass;  // rescaled below eps so the weighted-location branch runs
};

Row bench_set_median(const std::string& name, const SetMedianCase& c, const SolverConfig& config,
                     std::uint64_t instance_seed) {
  Rng rng(instance_seed);
  const SetFamily family = random_set_family(c.sets, c.points, c.dim, 0.0, 10.0, rng);
  const auto start = std::chrono::steady_clock::now();
  const SolveResult r = solve_set_median(family, config);
  const auto stop = std::chrono::steady_clock::now();
  oracle::SetMedianOptions opts;
  opts.threads = config.threads;
  const auto best = oracle::oracle_set_median(family, 2000, opts);
  return {name, r.cost_estimate, best.cost,
          std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count()};
}

Row bench_pseb(const std::string& name, const PsebCase& c, const SolverConfig& config,
               std::uint64_t instance_seed) {
  Rng rng(instance_seed);
  ProbInstance instance = c.small_mass
                              ? with_presence_mass(random_prob_instance(c.distributions, c.outcomes - 1, 2,
                                                                        0.0, 10.0, 0.0, rng),
                                                   0.5 * config.epsilon)
                              : random_prob_instance(c.distributions, c.outcomes, 2, 0.0, 10.0, 0.2, rng);
  const auto start = std::chrono::steady_clock::now();
  const SolveResult r = solve_pseb(instance, config);
  const auto stop = std::chrono::steady_clock::now();
  const auto best = oracle::oracle_pseb(instance, oracle::default_grid_step(instance));
  return {name, expected_cost(r.center, instance), best.cost,
          std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count()};
}

}  // namespace

void run_bench(const BenchOptions& options, std::ostream& out) {
  std::vector<std::function<Row()>> jobs;
  const SolverConfig& config = options.config;
  auto add_median = [&](std::size_t count, const SetMedianCase& c) {
    for (std::size_t i = 0; i < count; ++i) {
      const std::string name = "setmedian-" + std::to_string(jobs.size());
      const std::uint64_t seed = mix_seed(config.seed, 1000 + jobs.size());
      jobs.push_back([=] { return bench_set_median(name, c, config, seed); });
    }
  };
  auto add_pseb = [&](std::size_t count, const PsebCase& c) {
    for (std::size_t i = 0; i < count; ++i) {
      const std::string name = std::string(c.small_mass ? "pseb-case1-" : "pseb-case2-") +
                               std::to_string(jobs.size());
      const std::uint64_t seed = mix_seed(config.seed, 1000 + jobs.size());
      jobs.push_back([=] { return bench_pseb(name, c, config, seed); });
    }
  };

  if (options.suite == "smoke") {
    add_median(3, {20, 3, 2});
    add_pseb(1, {5, 3, true});
    add_pseb(1, {5, 3, false});
  } else if (options.suite == "setmedian") {
    add_median(10, {50, 4, 3});
  } else if (options.suite == "pseb") {
    add_pseb(3, {6, 3, true});
    add_pseb(3, {6, 3, false});
  } else {
    throw ConfigError("unknown bench suite '" + options.suite + "' (expected smoke|setmedian|pseb)");
  }

  out << "instance,eps,mode,cost,oracle_cost,ratio,millis\n";
  out << std::setprecision(10);
  for (const auto& job : jobs) {
    const Row row = job();
    const double ratio = row.oracle_cost > 0.0 ? row.cost / row.oracle_cost : 1.0;
    out << row.name << ',' << config.epsilon << ',' << to_string(config.mode) << ',' << row.cost << ','
        << row.oracle_cost << ',' << ratio << ',' << (options.timing ? row.millis : 0) << '\n';
  }
}

}  // namespace probball::cli
