#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "probball/config.hpp"

namespace probball::cli {

struct BenchOptions {
  std::string suite = "smoke";
  SolverConfig config;
  bool timing = true;
};

/// Writes `instance,eps,mode,cost,oracle_cost,ratio,millis` rows for every
/// instance of the suite. Throws ConfigError for an unknown suite.
void run_bench(const BenchOptions& options, std::ostream& out);

}  // namespace probball::cli
