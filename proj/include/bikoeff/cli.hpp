#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bikoeff/oracle.hpp"
#include "bikoeff/report.hpp"

namespace bikoeff {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitViolation = 2 };

/// Runs one command line (without the program name). Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// kExitViolation (after writing the witness to err) when a proven bound is exceeded, else kExitOk.
int verify_exit_code(const OracleReport& report, std::ostream& err);

/// One job of the consolidated report grid.
struct GridJob {
  ClassSpec spec;
  Target target;
};

/// ST and M, lambda in {0, 1/2, 1}, rho in {0, 1/4, 1/2}, targets a2..a4.
std::vector<GridJob> soundness_grid();
/// a5 for order rho in {0, 1/4, 1/2} and strong beta in {1/2, 3/4, 1}.
std::vector<GridJob> a5_grid();

/// Runs the jobs on `threads` workers; results come back in job order and do
/// not depend on the thread count.
std::vector<OracleReport> run_jobs(const std::vector<GridJob>& jobs, const SearchConfig& cfg, int threads);

}  // namespace bikoeff
