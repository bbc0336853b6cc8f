// Serial versus OpenMP cost of one solver time step, plus the reference
// implementation for scale. Run with --benchmark_counters_tabular=true.
#include <benchmark/benchmark.h>

#include <vector>

#include "ipm/problems.hpp"
#include "ipm/reference.hpp"
#include "ipm/run.hpp"
#include "ipm/solver.hpp"

namespace {

struct Setup {
  ipm::ProblemSpec problem;
  ipm::SolverConfig solver;
  ipm::PolynomialBasis basis;
  ipm::Entropy entropy;
  ipm::SpatialGrid grid;
};

Setup make_setup(const char* preset, int n_cells, ipm::Scheme scheme) {
  ipm::Preset p = ipm::preset(preset);
  p.problem.n_cells = n_cells;
  p.solver.scheme = scheme;
  p.solver.t_end = p.problem.t_end;
  ipm::PolynomialBasis basis(p.problem.n_moments - 1, p.problem.quadrature.build());
  ipm::Entropy entropy = ipm::make_entropy(p.problem);
  return {p.problem, p.solver, std::move(basis), entropy, p.problem.grid()};
}

void run_steps(benchmark::State& state, ipm::Scheme scheme, bool parallel) {
  Setup s = make_setup("burgers_ic1", static_cast<int>(state.range(0)), scheme);
  s.solver.parallel = parallel;
  for (auto _ : state) {
    state.PauseTiming();
    ipm::Simulation sim(s.grid, ipm::make_boundary(s.problem, s.grid, s.basis), s.basis,
                        s.entropy, ipm::make_flux(s.problem), s.solver,
                        ipm::project_ic(s.problem, s.grid, s.basis));
    state.ResumeTiming();
    for (int k = 0; k < 10; ++k) sim.step(sim.nominal_dt());
    benchmark::DoNotOptimize(sim.moments().data());
  }
  state.counters["cells"] = static_cast<double>(state.range(0));
}

void BM_FirstOrderSerial(benchmark::State& st) {
  run_steps(st, ipm::Scheme::RecalcFirstOrder, false);
}
void BM_FirstOrderParallel(benchmark::State& st) {
  run_steps(st, ipm::Scheme::RecalcFirstOrder, true);
}
void BM_SecondOrderSerial(benchmark::State& st) {
  run_steps(st, ipm::Scheme::RecalcSecondOrder, false);
}
void BM_SecondOrderParallel(benchmark::State& st) {
  run_steps(st, ipm::Scheme::RecalcSecondOrder, true);
}

void BM_FirstOrderReference(benchmark::State& state) {
  Setup s = make_setup("burgers_ic1", static_cast<int>(state.range(0)),
                       ipm::Scheme::RecalcFirstOrder);
  const Eigen::MatrixXd init = ipm::project_ic(s.problem, s.grid, s.basis);
  std::vector<ipm::MomentVector> cells;
  for (Eigen::Index j = 0; j < init.cols(); ++j) cells.push_back(init.col(j));
  const ipm::BoundaryCondition bc = ipm::make_boundary(s.problem, s.grid, s.basis);
  const ipm::UpwindFlux flux(ipm::make_flux(s.problem), s.entropy.u_minus(), s.entropy.u_plus());
  ipm::SolveOptions opts;
  opts.tau = s.solver.tau;
  const double dt = ipm::timestep_size(s.solver, s.grid, ipm::make_flux(s.problem), s.entropy);
  for (auto _ : state) {
    auto u = cells;
    for (int k = 0; k < 10; ++k) {
      u = ipm::reference::first_order_step(u, {bc.left, bc.right},
                                           ipm::reference::Base::Recalculated, dt, s.grid.dx(),
                                           s.basis, s.entropy, flux, opts);
    }
    benchmark::DoNotOptimize(u.data());
  }
  state.counters["cells"] = static_cast<double>(state.range(0));
}

}  // namespace

BENCHMARK(BM_FirstOrderSerial)->Arg(160)->Arg(1280)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstOrderParallel)->Arg(160)->Arg(1280)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SecondOrderSerial)->Arg(160)->Arg(1280)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SecondOrderParallel)->Arg(160)->Arg(1280)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FirstOrderReference)->Arg(160)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
