// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ipm/basis.hpp"
#include "ipm/cli.hpp"
#include "ipm/config.hpp"
#include "ipm/dual_solver.hpp"
#include "ipm/entropy.hpp"
#include "ipm/errors.hpp"
#include "ipm/flux.hpp"
#include "ipm/problems.hpp"
#include "ipm/quadrature.hpp"
#include "ipm/run.hpp"
#include "ipm/solver.hpp"

using namespace ipm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int number, const char* title, const Verdict& v) {
  std::printf("criterion %d [%s]: %s (%s)\n", number, title, v.pass ? "PASS" : "FAIL",
              v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Shared by criteria 1 and 7.
std::vector<cli::ConvergenceRow> g_rows;

Verdict convergence_orders() {
  const auto start = Clock::now();
  const RunConfig cfg = run_config_from_text("", "advection_sine");
  g_rows = cli::convergence_study(cfg, {Scheme::RecalcFirstOrder, Scheme::RecalcSecondOrder},
                                  {20, 40, 80, 160, 320});
  const double elapsed = seconds_since(start);
  const auto orders = cli::observed_orders(g_rows);
  // Last row of each scheme compares the two finest grids.
  const double first = orders[4], second = orders[9];
  const bool completed =
      std::all_of(g_rows.begin(), g_rows.end(), [](const auto& r) { return r.completed; });
  const bool pass = completed && first >= 0.85 && first <= 1.1 && second >= 1.8 &&
                    second <= 2.2 && elapsed < 120.0;
  return {pass, fmt("first-order %.4f", first) + fmt(", second-order %.4f", second) +
                    fmt(", %.1f s", elapsed)};
}

Verdict efficiency_crossover() {
  if (g_rows.empty()) return {false, "no convergence data"};
  // For each error level reached by the second-order scheme, compare with the
  // fastest first-order run reaching the same level.
  for (const auto& so : g_rows) {
    if (so.scheme != Scheme::RecalcSecondOrder || !so.completed) continue;
    double fo_time = std::numeric_limits<double>::infinity();
    for (const auto& fo : g_rows) {
      if (fo.scheme == Scheme::RecalcFirstOrder && fo.completed && fo.error0 <= so.error0) {
        fo_time = std::min(fo_time, fo.wall_seconds);
      }
    }
    if (so.wall_seconds < fo_time) {
      return {true, fmt("error %.3e", so.error0) + fmt(" reached in %.3f s", so.wall_seconds) +
                        (std::isinf(fo_time) ? std::string(", never by first order")
                                             : fmt(" vs %.3f s first order", fo_time))};
    }
  }
  return {false, "second order never faster at equal error"};
}

std::optional<RunOutcome> g_ic1;  // shared by criteria 2 and 5

Verdict maximum_principle() {
  const auto start = Clock::now();
  Preset p = preset("burgers_ic1");
  p.solver.capture_failure = true;
  g_ic1 = run_problem(p.problem, p.solver);
  const double elapsed = seconds_since(start);
  const auto& r = g_ic1->result;
  const bool pass = r.completed && !r.failure && r.min_ansatz >= 3.0 - 1e-9 &&
                    r.max_ansatz <= 12.0 + 1e-9 && elapsed < 60.0;
  return {pass, std::to_string(r.steps) + " steps" + fmt(", ansatz in [%.15g", r.min_ansatz) +
                    fmt(", %.15g]", r.max_ansatz) + fmt(", %.1f s", elapsed)};
}

Verdict table1_pattern() {
  const std::vector<double> dus = {1e-1, 1e-3, 1e-5};
  const std::vector<double> taus = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  bool top_row_completes = true;
  int small_du_failures = 0;
  std::string grid;
  for (double du : dus) {
    grid += fmt(" du=%g:", du);
    for (double tau : taus) {
      Preset p = preset("burgers_ic1");
      p.problem.entropy = EntropyKind::LogBarrier;
      p.problem.delta_u = du;
      p.solver.scheme = Scheme::Naive;
      p.solver.tau = tau;
      p.solver.capture_failure = true;
      const RunResult r = run_problem(p.problem, p.solver).result;
      const bool failed = r.failure.has_value();
      if (du == 1e-1 && failed) top_row_completes = false;
      if (du != 1e-1 && failed) ++small_du_failures;
      grid += failed ? " failed" : " ok";
    }
  }
  const bool pass = top_row_completes && small_du_failures >= 3;
  return {pass, "failures at small du: " + std::to_string(small_du_failures) + ";" + grid};
}

Verdict strategy_agreement() {
  const auto start = Clock::now();
  Preset mod = preset("uncertain_advection_ramp");
  mod.solver.capture_failure = true;
  Preset rec = preset("uncertain_advection_ramp");
  rec.solver.scheme = Scheme::RecalcFirstOrder;
  rec.problem.delta_u = 0.0;
  rec.solver.capture_failure = true;
  const RunResult a = run_problem(mod.problem, mod.solver).result;
  const RunResult b = run_problem(rec.problem, rec.solver).result;
  const double elapsed = seconds_since(start);
  if (!a.completed || !b.completed) return {false, "a run did not complete"};
  const double linf = (a.moments.row(0) - b.moments.row(0)).cwiseAbs().maxCoeff();
  const bool pass = linf <= 1e-2 && elapsed < 120.0;
  return {pass, fmt("L-infinity difference of u0 %.3e", linf) + fmt(", %.1f s", elapsed)};
}

Verdict galerkin_violates() {
  Preset p = preset("burgers_ic1");
  p.solver.scheme = Scheme::StochasticGalerkin;
  const RunResult sg = run_problem(p.problem, p.solver).result;
  const bool sg_violates = sg.ansatz.maxCoeff() > 12.0 || sg.ansatz.minCoeff() < 3.0;
  if (!g_ic1) return {false, "criterion 2 run missing"};
  const auto& ipm = g_ic1->result;
  const bool ipm_ok = ipm.completed && ipm.ansatz.maxCoeff() <= 12.0 && ipm.ansatz.minCoeff() >= 3.0;
  return {sg_violates && ipm_ok, fmt("SG range [%.4f", sg.ansatz.minCoeff()) +
                                     fmt(", %.4f]", sg.ansatz.maxCoeff()) +
                                     fmt(", IPM range [%.15g", ipm.ansatz.minCoeff()) +
                                     fmt(", %.15g]", ipm.ansatz.maxCoeff())};
}

// Criterion 6 sub-properties.

bool entropy_round_trips(std::string& detail) {
  std::mt19937_64 rng(6001);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (auto [lo, hi] : {std::pair{0.0, 1.0}, std::pair{3.0, 12.0}, std::pair{-5.0, -4.9}}) {
    for (const auto& e : {Entropy::bounded_barrier(lo, hi), Entropy::log_barrier(lo, hi)}) {
      for (int i = 0; i < 1000; ++i) {
        const double u = lo + (hi - lo) * (1e-6 + (1.0 - 2e-6) * unit(rng));
        worst = std::max(worst, std::abs(e.u_me(e.s_prime(u)) - u));
      }
    }
  }
  detail += fmt("a %.1e", worst);
  return worst <= 1e-12;
}

bool synthesis_inversion(std::string& detail) {
  std::mt19937_64 rng(6002);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const PolynomialBasis basis(2, gauss_legendre(40));
  const auto e = Entropy::bounded_barrier(3.0, 12.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    MomentVector target(3);
    for (int i = 0; i < 3; ++i) target(i) = coef(rng);
    Eigen::VectorXd values = basis.table() * target;
    for (auto& v : values) v = e.u_me(v);
    const MomentVector u = basis.weighted_table().transpose() * values;
    SolveOptions opts;
    opts.tau = 1e-10;
    try {
      worst = std::max(worst, (solve(u, opts, basis, e).multipliers - target).cwiseAbs().maxCoeff());
    } catch (const RealizabilityLost&) {
      worst = std::numeric_limits<double>::infinity();
    }
  }
  detail += fmt(", b %.1e", worst);
  return worst <= 1e-7;
}

bool hessian_matches_fd(std::string& detail) {
  std::mt19937_64 rng(6003);
  std::uniform_real_distribution<double> coef(-0.5, 0.5);
  const PolynomialBasis basis(4, gauss_legendre(40));
  MomentVector u = MomentVector::Zero(5);
  u(0) = 7.0;
  const double h = 1e-6;
  double worst = 0.0;
  for (const auto& e : {Entropy::bounded_barrier(3.0, 12.0), Entropy::log_barrier(3.0, 12.0)}) {
    for (int trial = 0; trial < 20; ++trial) {
      MomentVector lambda(5);
      for (int i = 0; i < 5; ++i) lambda(i) = coef(rng);
      const Eigen::MatrixXd hess = dual_objective(lambda, u, basis, e).hessian;
      for (int j = 0; j < 5; ++j) {
        MomentVector lp = lambda, lm = lambda;
        lp(j) += h;
        lm(j) -= h;
        const Eigen::VectorXd fd =
            (dual_objective(lp, u, basis, e).gradient - dual_objective(lm, u, basis, e).gradient) /
            (2.0 * h);
        worst = std::max(worst, (fd - hess.col(j)).cwiseAbs().maxCoeff());
      }
    }
  }
  detail += fmt(", c %.1e", worst);
  return worst < 1e-5;
}

bool conservation_drift(std::string& detail) {
  const SpatialGrid grid{0.0, 2.0, 80};
  const PolynomialBasis basis(2, gauss_legendre(20));
  const auto e = Entropy::bounded_barrier(-1.2, 1.2);
  Eigen::MatrixXd m(3, grid.n_cells);
  for (int j = 0; j < grid.n_cells; ++j) {
    const double xl = grid.a + j * grid.dx();
    m.col(j) = cell_moments(
        [](double x, const Node& xi) { return std::sin(3.141592653589793 * (x + 0.1 * xi[0])); },
        xl, xl + grid.dx(), basis);
  }
  SolverConfig c;
  c.scheme = Scheme::RecalcFirstOrder;
  c.tau = 1e-6;
  c.t_end = 0.5;
  Simulation sim(grid, BoundaryCondition::periodic(), basis, e, PhysicalFlux::advection(1.0), c, m);
  const RunResult r = sim.run();
  const double drift = std::abs(r.moments.row(0).sum() - m.row(0).sum());
  const double bound = r.steps * grid.n_cells * c.tau;
  detail += fmt(", d %.1e", drift) + fmt(" <= %.1e", bound);
  return r.completed && drift <= bound;
}

bool scalar_upwind_equivalence(std::string& detail) {
  ProblemSpec spec = preset("burgers_ic1").problem;
  spec.ic = IcKind::DeterministicRamp;
  spec.n_moments = 1;
  const auto grid = spec.grid();
  const PolynomialBasis basis(0, spec.quadrature.build());
  const Entropy e = make_entropy(spec);
  SolverConfig c;
  c.scheme = Scheme::RecalcFirstOrder;
  c.tau = 1e-9;
  const auto bc = make_boundary(spec, grid, basis);
  Simulation sim(grid, bc, basis, e, make_flux(spec), c, project_ic(spec, grid, basis));
  const double dt = sim.nominal_dt(), dx = grid.dx();
  double worst = 0.0;
  for (int k = 0; k < 60; ++k) {
    const Eigen::MatrixXd u = sim.moments();
    sim.step(dt);
    for (int j = 0; j < grid.n_cells; ++j) {
      const double left = j == 0 ? bc.left(0) : u(0, j - 1);
      const double expected =
          u(0, j) - dt / dx * (0.5 * u(0, j) * u(0, j) - 0.5 * left * left);
      worst = std::max(worst, std::abs(sim.moments()(0, j) - expected));
    }
  }
  detail += fmt(", e %.1e", worst);
  return worst <= c.tau + 1e-12;
}

bool quadrature_and_basis(std::string& detail) {
  double worst = 0.0;
  for (int n : {1, 2, 5, 10, 20, 40}) {
    const auto rule = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) s += rule.weights[q] * std::pow(rule.nodes[q][0], k);
      worst = std::max(worst, std::abs(s - (k % 2 ? 0.0 : 1.0 / (k + 1))));
    }
  }
  const auto cc = clenshaw_curtis_tensor(3, 2);
  double cc_sum = 0.0, cc_sep = 0.0;
  for (std::size_t q = 0; q < cc.size(); ++q) {
    cc_sum += cc.weights[q];
    cc_sep += cc.weights[q] * cc.nodes[q][0] * cc.nodes[q][0] * cc.nodes[q][1] * cc.nodes[q][1];
  }
  worst = std::max({worst, std::abs(cc_sum - 1.0), std::abs(cc_sep - 1.0 / 9.0)});
  for (int n_moments : {5, 10, 16}) {
    const PolynomialBasis b(n_moments - 1, gauss_legendre(40));
    const Eigen::MatrixXd gram = b.weighted_table().transpose() * b.table();
    worst = std::max(worst, (gram - Eigen::MatrixXd::Identity(n_moments, n_moments))
                                .cwiseAbs()
                                .maxCoeff());
  }
  const PolynomialBasis b2(4, cc);
  const Eigen::MatrixXd gram2 = b2.weighted_table().transpose() * b2.table();
  worst = std::max(worst, (gram2 - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff());
  detail += fmt(", f %.1e", worst);
  return worst <= 1e-12;
}

Verdict property_suites() {
  std::string detail;
  bool pass = true;
  pass &= entropy_round_trips(detail);
  pass &= synthesis_inversion(detail);
  pass &= hessian_matches_fd(detail);
  pass &= conservation_drift(detail);
  pass &= scalar_upwind_equivalence(detail);
  pass &= quadrature_and_basis(detail);
  return {pass, detail};
}

Verdict two_dimensional_run() {
  const auto start = Clock::now();
  Preset p = preset("burgers_2d_ic3");
  p.problem.n_cells = 600;
  p.solver.capture_failure = true;
  const RunResult r = run_problem(p.problem, p.solver).result;
  const double elapsed = seconds_since(start);
  const bool pass = r.completed && !r.failure && r.min_ansatz >= 1.0 - 1e-9 &&
                    r.max_ansatz <= 12.2 + 1e-9;
  return {pass, std::to_string(r.steps) + " steps" + fmt(", ansatz in [%.6f", r.min_ansatz) +
                    fmt(", %.6f]", r.max_ansatz) + fmt(", %.1f s", elapsed)};
}

template <class F>
Verdict guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  report(1, "convergence orders", guarded(convergence_orders));
  report(2, "maximum principle", guarded(maximum_principle));
  report(3, "crash table pattern", guarded(table1_pattern));
  report(4, "strategy agreement", guarded(strategy_agreement));
  report(5, "galerkin violates, ipm does not", guarded(galerkin_violates));
  report(6, "property suites", guarded(property_suites));
  report(7, "efficiency crossover", guarded(efficiency_crossover));
  report(8, "two-dimensional run", guarded(two_dimensional_run));
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
