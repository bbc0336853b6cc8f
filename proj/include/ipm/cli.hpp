#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ipm/config.hpp"
#include "ipm/run.hpp"

namespace ipm::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kRealizabilityLost = 3,
  kIoError = 4,
};

/// Runs one configuration and writes solution.csv, diagnostics.csv and
/// slices.csv. Returns kRealizabilityLost when a dual solve failed (the
/// failing step is the last diagnostics row).
int run_single(const RunConfig& config, std::ostream& log);

/// Crash table of the naive scheme over delta_u x tau (defaults
/// {1e-1, 1e-3, 1e-5} x {1e-1, ..., 1e-5}); writes table1.csv.
int run_table1(const RunConfig& config, std::ostream& log);

/// Grid refinement study over sweep.n_cells (default 20..320) and
/// sweep.scheme (default first and second order recalculation) with
/// tau = dx^(p+1); writes convergence.csv and efficiency.csv.
int run_convergence(const RunConfig& config, std::ostream& log);

/// Cartesian product of all sweep axes; one row per run in sweep.csv.
int run_sweep(const RunConfig& config, std::ostream& log);

struct ConvergenceRow {
  Scheme scheme;
  int n_cells;
  double dx;
  double error0;
  double wall_seconds;
  bool completed;
};

/// The runs behind run_convergence, without file output.
std::vector<ConvergenceRow> convergence_study(const RunConfig& config,
                                              const std::vector<Scheme>& schemes,
                                              const std::vector<int>& n_cells);

/// log2(e_coarse / e_fine) between consecutive rows of one scheme; NaN for
/// the first row of each scheme.
std::vector<double> observed_orders(const std::vector<ConvergenceRow>& rows);

/// "%.17g" formatting used by every CSV writer.
std::string format_double(double v);

/// Writers, throwing IoError on failure.
void write_solution_csv(const std::filesystem::path& file, const RunOutcome& outcome);
void write_diagnostics_csv(const std::filesystem::path& file, const RunOutcome& outcome);
void write_slices_csv(const std::filesystem::path& file, const RunOutcome& outcome,
                      const std::vector<double>& xis);

/// Applies command-line overrides, runs the subcommand and maps exceptions
/// to exit codes. `command` is one of run, table1, converge, sweep.
struct Invocation {
  std::string command;
  std::optional<std::filesystem::path> config;
  std::optional<std::string> preset;
  std::optional<std::filesystem::path> out;
  std::optional<int> threads;
  bool serial = false;
};
int dispatch(const Invocation& inv, std::ostream& log, std::ostream& err);

}  // namespace ipm::cli
