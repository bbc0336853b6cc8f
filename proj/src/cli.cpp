#include "ipm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <omp.h>

#include "ipm/errors.hpp"

namespace ipm::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_csv(const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write '" + file.string() + "'");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& file) {
  out.flush();
  if (!out) throw IoError("write to '" + file.string() + "' failed");
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::string failure_text(const RunResult& r) {
  if (!r.failure) return "";
  return r.failure->what();
}

int failed_step(const RunResult& r) {
  if (r.failure && r.failure->step()) return static_cast<int>(*r.failure->step());
  return r.steps;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_solution_csv(const std::filesystem::path& file, const RunOutcome& outcome) {
  auto out = open_csv(file);
  const auto& r = outcome.result;
  const auto nb = r.moments.rows();
  out << "x";
  for (Eigen::Index i = 0; i < nb; ++i) out << ",u" << i;
  out << ",mean,std,min_ansatz,max_ansatz\n";
  const Statistics st = expectation_std(r.moments);
  const bool have_ansatz = r.ansatz.cols() == r.moments.cols();
  for (Eigen::Index j = 0; j < r.moments.cols(); ++j) {
    out << format_double(outcome.grid.center(static_cast<int>(j)));
    for (Eigen::Index i = 0; i < nb; ++i) out << ',' << format_double(r.moments(i, j));
    out << ',' << format_double(st.mean(j)) << ',' << format_double(st.stddev(j));
    out << ',' << format_double(have_ansatz ? r.ansatz.col(j).minCoeff() : kNaN);
    out << ',' << format_double(have_ansatz ? r.ansatz.col(j).maxCoeff() : kNaN) << '\n';
  }
  finish(out, file);
}

void write_diagnostics_csv(const std::filesystem::path& file, const RunOutcome& outcome) {
  auto out = open_csv(file);
  const auto& r = outcome.result;
  out << "step,time,dt,newton_iterations,max_newton_iterations,min_ansatz,max_ansatz,margin,"
         "max_gamma,status\n";
  for (const auto& d : r.diagnostics) {
    out << d.step << ',' << format_double(d.time) << ',' << format_double(d.dt) << ','
        << d.newton_iterations << ',' << d.max_newton_iterations << ','
        << format_double(d.min_ansatz) << ',' << format_double(d.max_ansatz) << ','
        << format_double(d.margin) << ',' << format_double(d.max_gamma) << ",ok\n";
  }
  if (r.failure) {
    out << failed_step(r) << ',' << format_double(r.time) << ",,,,,,,,realizability_lost\n";
  }
  finish(out, file);
}

void write_slices_csv(const std::filesystem::path& file, const RunOutcome& outcome,
                      const std::vector<double>& xis) {
  auto out = open_csv(file);
  const Eigen::MatrixXd v = slice_values(outcome, xis);
  out << "x";
  for (double xi : xis) out << ",u_xi=" << format_double(xi);
  out << '\n';
  for (Eigen::Index j = 0; j < v.rows(); ++j) {
    out << format_double(outcome.grid.center(static_cast<int>(j)));
    for (Eigen::Index k = 0; k < v.cols(); ++k) out << ',' << format_double(v(j, k));
    out << '\n';
  }
  finish(out, file);
}

int run_single(const RunConfig& config, std::ostream& log) {
  SolverConfig solver = config.solver;
  solver.capture_failure = true;
  const RunOutcome outcome = run_problem(config.problem, solver);
  for (const auto& w : outcome.result.warnings) log << "warning: " << w << '\n';
  ensure_dir(config.output_dir);
  write_solution_csv(config.output_dir / "solution.csv", outcome);
  write_diagnostics_csv(config.output_dir / "diagnostics.csv", outcome);
  write_slices_csv(config.output_dir / "slices.csv", outcome, config.slices);
  const auto& r = outcome.result;
  if (r.failure) {
    log << failure_text(r) << '\n';
    return kRealizabilityLost;
  }
  log << config.preset_name << ": " << r.steps << " steps to t = " << format_double(r.time)
      << ", ansatz range [" << format_double(r.min_ansatz) << ", "
      << format_double(r.max_ansatz) << "], " << format_double(r.wall_seconds) << " s\n";
  return kOk;
}

int run_table1(const RunConfig& config, std::ostream& log) {
  const std::vector<double> delta_us =
      config.sweep.delta_u.empty() ? std::vector<double>{1e-1, 1e-3, 1e-5} : config.sweep.delta_u;
  const std::vector<double> taus = config.sweep.tau.empty()
                                       ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4, 1e-5}
                                       : config.sweep.tau;
  log << "table1: " << delta_us.size() * taus.size() << " runs\n";
  ensure_dir(config.output_dir);
  const auto file = config.output_dir / "table1.csv";
  auto out = open_csv(file);
  out << "delta_u";
  for (double tau : taus) out << ",tau=" << format_double(tau);
  out << '\n';
  for (double du : delta_us) {
    out << format_double(du);
    for (double tau : taus) {
      ProblemSpec problem = config.problem;
      problem.entropy = EntropyKind::LogBarrier;
      problem.delta_u = du;
      SolverConfig solver = config.solver;
      solver.scheme = Scheme::Naive;
      solver.tau = tau;
      solver.tau_from_grid = false;
      solver.capture_failure = true;
      const RunOutcome o = run_problem(problem, solver);
      std::string cell = "completed";
      if (o.result.failure) cell = "failed:" + std::to_string(failed_step(o.result));
      out << ',' << cell;
      log << "  delta_u=" << format_double(du) << " tau=" << format_double(tau) << " -> " << cell
          << '\n';
    }
    out << '\n';
  }
  finish(out, file);
  return kOk;
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& config,
                                              const std::vector<Scheme>& schemes,
                                              const std::vector<int>& n_cells) {
  std::vector<ConvergenceRow> rows;
  for (Scheme s : schemes) {
    for (int n : n_cells) {
      ProblemSpec problem = config.problem;
      problem.n_cells = n;
      SolverConfig solver = config.solver;
      solver.scheme = s;
      solver.tau_from_grid = true;
      solver.capture_failure = true;
      const RunOutcome o = run_problem(problem, solver);
      ConvergenceRow row{s, n, o.grid.dx(), kNaN, o.result.wall_seconds, o.result.completed};
      if (o.result.completed) {
        row.error0 = l1_error(snapshot(o), o.problem, o.grid, *o.basis, o.result.time)(0);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<double> observed_orders(const std::vector<ConvergenceRow>& rows) {
  std::vector<double> orders(rows.size(), kNaN);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].scheme != rows[i - 1].scheme) continue;
    const double ratio = static_cast<double>(rows[i].n_cells) / rows[i - 1].n_cells;
    orders[i] = std::log(rows[i - 1].error0 / rows[i].error0) / std::log(ratio);
  }
  return orders;
}

int run_convergence(const RunConfig& config, std::ostream& log) {
  if (!has_exact_solution(config.problem)) {
    throw ConfigError("convergence study needs a problem with an exact solution");
  }
  const std::vector<int> grids = config.sweep.n_cells.empty()
                                     ? std::vector<int>{20, 40, 80, 160, 320}
                                     : config.sweep.n_cells;
  const std::vector<Scheme> schemes =
      config.sweep.scheme.empty()
          ? std::vector<Scheme>{Scheme::RecalcFirstOrder, Scheme::RecalcSecondOrder}
          : config.sweep.scheme;
  log << "converge: " << grids.size() * schemes.size() << " runs\n";
  const auto rows = convergence_study(config, schemes, grids);
  const auto orders = observed_orders(rows);

  ensure_dir(config.output_dir);
  const bool pairs = grids.size() > 1;
  const auto conv_file = config.output_dir / "convergence.csv";
  auto conv = open_csv(conv_file);
  conv << "scheme,n_cells,dx,error0" << (pairs ? ",order" : "") << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    conv << to_string(rows[i].scheme) << ',' << rows[i].n_cells << ','
         << format_double(rows[i].dx) << ',' << format_double(rows[i].error0);
    if (pairs) conv << ',' << (std::isnan(orders[i]) ? std::string() : format_double(orders[i]));
    conv << '\n';
    log << "  " << to_string(rows[i].scheme) << " n=" << rows[i].n_cells
        << " e0=" << format_double(rows[i].error0) << '\n';
  }
  finish(conv, conv_file);

  const auto eff_file = config.output_dir / "efficiency.csv";
  auto eff = open_csv(eff_file);
  eff << "scheme,n_cells,wall_seconds,error0\n";
  for (const auto& r : rows) {
    eff << to_string(r.scheme) << ',' << r.n_cells << ',' << format_double(r.wall_seconds) << ','
        << format_double(r.error0) << '\n';
  }
  finish(eff, eff_file);
  return kOk;
}

int run_sweep(const RunConfig& config, std::ostream& log) {
  const auto& ax = config.sweep;
  auto or_base = [](const auto& axis, auto base) {
    using T = decltype(base);
    return axis.empty() ? std::vector<T>{base} : std::vector<T>(axis.begin(), axis.end());
  };
  const auto schemes = or_base(ax.scheme, config.solver.scheme);
  const auto grids = or_base(ax.n_cells, config.problem.n_cells);
  const auto taus = or_base(ax.tau, config.solver.tau);
  const auto dus = or_base(ax.delta_u, config.problem.delta_u);
  const auto gammas = or_base(ax.gamma, config.solver.gamma);
  log << "sweep: " << ax.product_size() << " runs\n";

  ensure_dir(config.output_dir);
  const auto file = config.output_dir / "sweep.csv";
  auto out = open_csv(file);
  out << "scheme,n_cells,tau,delta_u,gamma,status,failed_step,steps,min_ansatz,max_ansatz,"
         "wall_seconds\n";
  for (Scheme s : schemes)
    for (int n : grids)
      for (double tau : taus)
        for (double du : dus)
          for (double gamma : gammas) {
            ProblemSpec problem = config.problem;
            problem.n_cells = n;
            problem.delta_u = du;
            SolverConfig solver = config.solver;
            solver.scheme = s;
            if (!ax.tau.empty()) {
              solver.tau = tau;
              solver.tau_from_grid = false;
            }
            solver.gamma = gamma;
            solver.capture_failure = true;
            std::string status = "completed", step;
            RunResult r;
            try {
              r = run_problem(problem, solver).result;
              if (r.failure) {
                status = "realizability_lost";
                step = std::to_string(failed_step(r));
              }
            } catch (const ConfigError& e) {
              status = "config_error";
              log << "  config error: " << e.what() << '\n';
            }
            out << to_string(s) << ',' << n << ',' << format_double(solver.tau) << ','
                << format_double(du) << ',' << format_double(gamma) << ',' << status << ','
                << step << ',' << r.steps << ',' << format_double(r.min_ansatz) << ','
                << format_double(r.max_ansatz) << ',' << format_double(r.wall_seconds) << '\n';
          }
  finish(out, file);
  return kOk;
}

int dispatch(const Invocation& inv, std::ostream& log, std::ostream& err) {
  try {
    RunConfig cfg = load_run_config(inv.config, inv.preset);
    if (inv.out) cfg.output_dir = *inv.out;
    if (inv.serial) cfg.solver.parallel = false;
    if (inv.threads) {
      if (*inv.threads < 1) throw ConfigError("--threads must be >= 1");
      omp_set_num_threads(*inv.threads);
    }
    if (inv.command == "run") return run_single(cfg, log);
    if (inv.command == "table1") return run_table1(cfg, log);
    if (inv.command == "converge") return run_convergence(cfg, log);
    if (inv.command == "sweep") return run_sweep(cfg, log);
    throw ConfigError("unknown command '" + inv.command + "'");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UnsupportedTime& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const RealizabilityLost& e) {
    err << e.what() << '\n';
    return kRealizabilityLost;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace ipm::cli
