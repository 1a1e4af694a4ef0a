#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bench.hpp"
#include "probball/errors.hpp"
#include "probball/io.hpp"
#include "probball/kernels.hpp"
#include "probball/oracle.hpp"
#include "probball/probseb.hpp"
#include "probball/setmedian.hpp"

namespace probball::cli {

namespace {

using nlohmann::json;

// Raw flag values; optional ones stay empty unless given on the command line.
struct SolverFlags {
  std::string in;
  std::string out;
  std::string config_file;
  std::optional<double> epsilon;
  std::optional<double> eta;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<double> c_iters;
  std::optional<double> c_select;
  std::optional<std::size_t> candidate_budget;
  std::optional<std::size_t> repetitions;
  std::optional<double> reduce_sets;
  std::optional<std::uint64_t> max_trials;
  unsigned threads = 0;
};

struct KernelFlags {
  std::optional<std::string> kind;
  std::optional<int> degree;
  std::optional<double> offset;
  std::optional<double> sigma;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f, bool reduce, bool trials) {
  cmd->add_option("--in", f.in, "Instance JSON file")->required();
  cmd->add_option("--out", f.out, "Write the result here instead of stdout");
  cmd->add_option("--config", f.config_file, "Start from a config_echo JSON object");
  cmd->add_option("--epsilon", f.epsilon, "Approximation parameter");
  cmd->add_option("--eta", f.eta, "Failure probability; sets ceil(log2(1/eta)) repetitions");
  cmd->add_option("--seed", f.seed, "Seed of every random choice");
  cmd->add_option("--mode", f.mode, "paper|practical");
  cmd->add_option("--c-iters", f.c_iters, "Iteration constant (practical mode)");
  cmd->add_option("--c-select", f.c_select, "Selection sample constant (practical mode)");
  cmd->add_option("--candidate-budget", f.candidate_budget, "Candidates kept per descent run");
  cmd->add_option("--repetitions", f.repetitions, "Override the repetition count");
  if (reduce) cmd->add_option("--reduce-sets", f.reduce_sets, "Replace sets by approximate enclosing balls");
  if (trials) cmd->add_option("--max-trials", f.max_trials, "Realization sampling trial limit");
  cmd->add_option("--threads", f.threads, "Worker threads for repetitions (0 = sequential)");
}

SolverConfig resolve_config(const SolverFlags& f) {
  SolverConfig c;
  if (!f.config_file.empty()) {
    json echo;
    try {
      echo = json::parse(io::read_file(f.config_file));
      c.epsilon = echo.at("epsilon").get<double>();
      c.eta = echo.at("eta").get<double>();
      c.seed = echo.at("seed").get<std::uint64_t>();
      c.mode = parse_mode(echo.at("mode").get<std::string>());
      c.c_iters = echo.at("c_iters").get<double>();
      c.c_select = echo.at("c_select").get<double>();
      c.candidate_budget = echo.at("candidate_budget").get<std::size_t>();
      c.repetitions = echo.at("repetitions").get<std::size_t>();
      if (echo.contains("reduce_sets") && !echo["reduce_sets"].is_null()) {
        c.reduce_sets = echo["reduce_sets"].get<double>();
      }
      if (echo.contains("max_trials") && !echo["max_trials"].is_null()) {
        c.max_trials = echo["max_trials"].get<std::uint64_t>();
      }
    } catch (const json::exception& e) {
      throw ConfigError("bad --config file: " + std::string(e.what()));
    }
  }
  if (f.mode) {
    c.mode = parse_mode(*f.mode);
    c.c_iters = c.mode == Mode::kPaperFaithful ? SolverConfig::kPaperIterConstant
                                               : SolverConfig::kPracticalIterConstant;
    c.c_select = c.mode == Mode::kPaperFaithful ? SolverConfig::kPaperSelectConstant
                                                : SolverConfig::kPracticalSelectConstant;
  }
  if (f.epsilon) c.epsilon = *f.epsilon;
  if (f.eta) {
    c.eta = *f.eta;
    if (!f.repetitions) c.repetitions.reset();
  }
  if (f.seed) c.seed = *f.seed;
  if (f.c_iters) c.c_iters = *f.c_iters;
  if (f.c_select) c.c_select = *f.c_select;
  if (f.candidate_budget) c.candidate_budget = *f.candidate_budget;
  if (f.repetitions) c.repetitions = *f.repetitions;
  if (f.reduce_sets) c.reduce_sets = *f.reduce_sets;
  if (f.max_trials) c.max_trials = *f.max_trials;
  c.threads = f.threads;
  c.validate();
  return c;
}

Kernel resolve_kernel(const KernelFlags& f) {
  const std::string kind = f.kind.value_or("rbf");
  Kernel k;
  if (kind == "linear") {
    k = Kernel::linear();
  } else if (kind == "poly") {
    k = Kernel::polynomial(f.degree.value_or(2), f.offset.value_or(0.0));
  } else if (kind == "rbf") {
    k = Kernel::rbf(f.sigma.value_or(1.0));
  } else {
    throw ConfigError("unknown kernel '" + kind + "' (expected linear|poly|rbf)");
  }
  return k;
}

json point_json(PointRef p) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < p.size(); ++k) arr.push_back(p[k]);
  return arr;
}

json config_echo(const SolverConfig& c) {
  json j{{"epsilon", c.epsilon},
         {"eta", c.eta},
         {"seed", c.seed},
         {"mode", std::string(to_string(c.mode))},
         {"c_iters", c.c_iters},
         {"c_select", c.c_select},
         {"candidate_budget", c.candidate_budget},
         {"repetitions", c.repetition_count()},
         {"reduce_sets", c.reduce_sets ? json(*c.reduce_sets) : json(nullptr)},
         {"max_trials", c.max_trials ? json(*c.max_trials) : json(nullptr)}};
  return j;
}

json kernel_json(const Kernel& k) {
  json j{{"kind", std::string(to_string(k.kind))}};
  if (k.kind == Kernel::Kind::kPolynomial) {
    j["degree"] = k.degree;
    j["offset"] = k.offset;
  } else if (k.kind == Kernel::Kind::kRbf) {
    j["sigma"] = k.sigma;
  }
  return j;
}

json diagnostics_json(const Diagnostics& d) {
  json j{{"iterations_total", d.iterations_total},
         {"step_sizes_tried", d.step_sizes_tried},
         {"candidates_generated", d.candidates_generated},
         {"selection_sample_size", d.selection_sample_size},
         {"repetitions", d.repetitions},
         {"winning_repetition", d.winning_repetition},
         {"selected_candidate", d.selected_candidate},
         {"r_tilde", d.r_tilde},
         {"degenerate", d.degenerate},
         {"repetition_costs", d.repetition_costs}};
  if (d.sampling_case) j["case"] = *d.sampling_case;
  if (d.samples) j["samples"] = *d.samples;
  if (d.trials) j["trials"] = *d.trials;
  if (d.family_cost) j["family_cost"] = *d.family_cost;
  if (d.surrogate_cost) j["surrogate_cost"] = *d.surrogate_cost;
  return j;
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + path + "'");
  file << text;
}

void cmd_setmedian(const SolverFlags& f, std::ostream& out) {
  const SolverConfig config = resolve_config(f);
  const SetFamily family = io::parse_set_family(io::read_file(f.in));
  const SolveResult r = solve_set_median(family, config);
  emit({{"center", point_json(r.center)},
        {"cost", r.cost_estimate},
        {"diagnostics", diagnostics_json(r.diagnostics)},
        {"config_echo", config_echo(config)}},
       f.out, out);
}

void cmd_pseb(const SolverFlags& f, std::ostream& out) {
  const SolverConfig config = resolve_config(f);
  const ProbInstance instance = io::parse_prob_instance(io::read_file(f.in));
  const SolveResult r = solve_pseb(instance, config);
  json diag = diagnostics_json(r.diagnostics);
  try {
    diag["expected_cost"] = expected_cost(r.center, instance);
  } catch (const EnumerationCapExceeded&) {
    // too many realizations to report the exact value
  }
  emit({{"center", point_json(r.center)},
        {"cost", r.cost_estimate},
        {"diagnostics", std::move(diag)},
        {"config_echo", config_echo(config)}},
       f.out, out);
}

void cmd_psvdd(const SolverFlags& f, const KernelFlags& kf, std::ostream& out) {
  const SolverConfig config = resolve_config(f);
  const Kernel kernel = resolve_kernel(kf);
  const ProbInstance instance = io::parse_prob_instance(io::read_file(f.in));
  const KernelSolveResult r = solve_psvdd(instance, kernel, config);
  json terms = json::array();
  for (const auto& t : r.center.terms()) terms.push_back({{"gamma", t.gamma}, {"loc", point_json(t.location)}});
  json echo = config_echo(config);
  echo["kernel"] = kernel_json(kernel);
  emit({{"implicit_center", std::move(terms)},
        {"cost", r.cost_estimate},
        {"diagnostics", diagnostics_json(r.diagnostics)},
        {"config_echo", std::move(echo)}},
       f.out, out);
}

struct OracleFlags {
  std::string in;
  std::string out;
  std::size_t budget = 2000;
  double grid_step = 0.0;
  unsigned threads = 0;
};

void cmd_oracle(const OracleFlags& f, std::ostream& out) {
  const std::string text = io::read_file(f.in);
  if (io::detect_kind(text) == io::InstanceKind::kSetFamily) {
    const SetFamily family = io::parse_set_family(text);
    oracle::SetMedianOptions opts;
    opts.threads = f.threads;
    const auto best = oracle::oracle_set_median(family, f.budget, opts);
    emit({{"problem", "setmedian"}, {"center", point_json(best.center)}, {"cost", best.cost},
          {"budget", f.budget}},
         f.out, out);
    return;
  }
  const ProbInstance instance = io::parse_prob_instance(text);
  const double step = f.grid_step > 0.0 ? f.grid_step : oracle::default_grid_step(instance);
  const auto best = oracle::oracle_pseb(instance, step);
  emit({{"problem", "pseb"}, {"center", point_json(best.center)}, {"cost", best.cost}, {"grid_step", step}},
       f.out, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic subgradient solvers for set median, probabilistic SEB and SVDD"};
  app.require_subcommand(1);

  SolverFlags median_flags, pseb_flags, svdd_flags;
  KernelFlags kernel_flags;
  OracleFlags oracle_flags;
  BenchOptions bench;
  std::optional<double> bench_eps;
  std::optional<std::string> bench_mode;
  std::uint64_t bench_seed = 0;
  bool no_timing = false;

  auto* median = app.add_subcommand("setmedian", "Solve a set median instance");
  add_solver_flags(median, median_flags, true, false);
  auto* pseb = app.add_subcommand("pseb", "Solve a probabilistic smallest enclosing ball instance");
  add_solver_flags(pseb, pseb_flags, true, true);
  auto* svdd = app.add_subcommand("psvdd", "Solve a probabilistic SVDD instance in a kernel space");
  add_solver_flags(svdd, svdd_flags, false, true);
  svdd->add_option("--kernel", kernel_flags.kind, "linear|poly|rbf (default rbf)");
  svdd->add_option("--poly-degree", kernel_flags.degree, "Polynomial degree (default 2)");
  svdd->add_option("--poly-offset", kernel_flags.offset, "Polynomial offset (default 0)");
  svdd->add_option("--rbf-sigma", kernel_flags.sigma, "RBF bandwidth (default 1)");

  auto* orc = app.add_subcommand("oracle", "Brute-force reference optimum");
  orc->add_option("--in", oracle_flags.in, "Instance JSON file")->required();
  orc->add_option("--out", oracle_flags.out, "Write the result here instead of stdout");
  orc->add_option("--budget", oracle_flags.budget, "Descent iterations per start (set median)");
  orc->add_option("--grid-step", oracle_flags.grid_step, "Grid spacing (pSEB); 0 = diameter / 40");
  orc->add_option("--threads", oracle_flags.threads, "Worker threads for descent starts");

  auto* bch = app.add_subcommand("bench", "Solver versus oracle on generated instances (CSV)");
  bch->add_option("--suite", bench.suite, "smoke|setmedian|pseb");
  bch->add_option("--epsilon", bench_eps, "Approximation parameter (default 0.1)");
  bch->add_option("--mode", bench_mode, "paper|practical");
  bch->add_option("--seed", bench_seed, "Seed for instances and solver");
  bch->add_option("--threads", bench.config.threads, "Worker threads");
  bch->add_flag("--no-timing", no_timing, "Print 0 in the millis column");
  std::string bench_out;
  bch->add_option("--out", bench_out, "Write CSV here instead of stdout");

  std::vector<const char*> argv{"probball"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (median->parsed()) cmd_setmedian(median_flags, out);
    if (pseb->parsed()) cmd_pseb(pseb_flags, out);
    if (svdd->parsed()) cmd_psvdd(svdd_flags, kernel_flags, out);
    if (orc->parsed()) cmd_oracle(oracle_flags, out);
    if (bch->parsed()) {
      const Mode mode = bench_mode ? parse_mode(*bench_mode) : Mode::kPractical;
      const double eps = bench_eps.value_or(0.1);
      const unsigned threads = bench.config.threads;
      bench.config = mode == Mode::kPaperFaithful ? SolverConfig::paper_faithful(eps, 0.1, bench_seed)
                                                  : SolverConfig::practical(eps, 0.1, bench_seed);
      bench.config.threads = threads;
      bench.timing = !no_timing;
      bench.config.validate();
      if (bench_out.empty()) {
        run_bench(bench, out);
      } else {
        std::ofstream file(bench_out, std::ios::binary);
        if (!file) throw ConfigError("cannot write '" + bench_out + "'");
        run_bench(bench, file);
      }
    }
  } catch (const InstanceError& e) {
    err << "invalid instance: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  }
  return kExitOk;
}

}  // namespace probball::cli
