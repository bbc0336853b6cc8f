#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "ipm/basis.hpp"
#include "ipm/entropy.hpp"
#include "ipm/problems.hpp"
#include "ipm/solver.hpp"

namespace ipm {

/// Everything a finished run needs for post-processing.
struct RunOutcome {
  ProblemSpec problem;
  SolverConfig solver;
  SpatialGrid grid;
  std::shared_ptr<const PolynomialBasis> basis;
  Entropy entropy;
  RunResult result;
};

/// Builds rule, basis, entropy, flux, boundary and initial moments from the
/// problem and runs the solver. solver.t_end is taken from the problem.
RunOutcome run_problem(const ProblemSpec& problem, SolverConfig solver);

/// Ansatz value of every cell at the random-space point (xi, xi) (the
/// second coordinate is ignored in one dimension). [cells x xis].
Eigen::MatrixXd slice_values(const RunOutcome& outcome, const std::vector<double>& xis);

/// The final field as an L1-error snapshot: reconstructed for second order,
/// piecewise constant otherwise.
FieldSnapshot snapshot(const RunOutcome& outcome);

}  // namespace ipm
