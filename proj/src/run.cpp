#include "ipm/run.hpp"

#include <limits>

namespace ipm {

RunOutcome run_problem(const ProblemSpec& problem, SolverConfig solver) {
  solver.t_end = problem.t_end;
  const bool galerkin = solver.scheme == Scheme::StochasticGalerkin;
  auto basis = std::make_shared<const PolynomialBasis>(problem.n_moments - 1,
                                                       problem.quadrature.build());
  Entropy entropy = make_entropy(problem, galerkin);
  const SpatialGrid grid = problem.grid();

  std::vector<std::string> warnings;
  if (solver.scheme == Scheme::ModifiedCfl && problem.delta_u == 0.0) {
    warnings.emplace_back(
        "modified CFL with delta_u = 0: realizability is not guaranteed when the initial data "
        "attains its bounds on a set of positive measure");
  }

  Simulation sim(grid, make_boundary(problem, grid, *basis), *basis, entropy,
                 make_flux(problem), solver, project_ic(problem, grid, *basis));
  RunOutcome out{problem, solver, grid, basis, entropy, sim.run()};
  out.result.warnings.insert(out.result.warnings.begin(), warnings.begin(), warnings.end());
  return out;
}

Eigen::MatrixXd slice_values(const RunOutcome& outcome, const std::vector<double>& xis) {
  const auto& r = outcome.result;
  const int n = static_cast<int>(r.moments.cols());
  Eigen::MatrixXd out(n, static_cast<Eigen::Index>(xis.size()));
  const bool galerkin = outcome.solver.scheme == Scheme::StochasticGalerkin;
  const bool have_multipliers = r.completed && r.multipliers.cols() == n;
  for (std::size_t k = 0; k < xis.size(); ++k) {
    const Eigen::VectorXd phi = outcome.basis->evaluate({xis[k], xis[k]});
    for (int j = 0; j < n; ++j) {
      double v;
      if (galerkin) {
        v = phi.dot(r.moments.col(j));
      } else if (have_multipliers) {
        v = outcome.entropy.u_me(phi.dot(r.multipliers.col(j)));
      } else {
        v = std::numeric_limits<double>::quiet_NaN();
      }
      out(j, static_cast<Eigen::Index>(k)) = v;
    }
  }
  return out;
}

FieldSnapshot snapshot(const RunOutcome& outcome) {
  FieldSnapshot s;
  s.moments = outcome.result.moments;
  if (scheme_order(outcome.solver.scheme) == 2) {
    s.ansatz = outcome.result.ansatz;
    s.slopes = outcome.result.slopes;
  }
  return s;
}

}  // namespace ipm
