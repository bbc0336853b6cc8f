#pragma once

#include <optional>

#include <Eigen/Dense>

#include "ipm/basis.hpp"
#include "ipm/entropy.hpp"

namespace ipm {

struct SolveOptions {
  /// Stop once ||<u_me(Lambda) phi> - u||_2 < tau.
  double tau = 1e-7;
  /// When set, keep iterating until the estimated curvature ratio
  /// s''(u_me(Lambda_hat)) / s''(u_me(Lambda)) is <= gamma_target as well.
  std::optional<double> gamma_target;
  /// Safety factor on the Newton step used to estimate the exact multipliers.
  double zeta = 1.0;
  int max_iterations = 1000;
  /// Newton steps taken even when the start already meets tau.
  int min_iterations = 0;
};

struct DualSolution {
  MomentVector multipliers;
  Eigen::VectorXd dual_state;  // Lambda at the quadrature nodes
  Eigen::VectorXd ansatz;      // u_me(Lambda) at the quadrature nodes
  double gradient_norm = 0.0;
  int iterations = 0;
  std::optional<double> gamma_estimate;
  double condition_estimate = 1.0;
};

struct DualObjective {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

/// <s_*(lambda^T phi)> - lambda^T u with its gradient <u_me phi> - u and
/// Hessian <u_me' phi phi^T>.
DualObjective dual_objective(const MomentVector& lambda, const MomentVector& moments,
                             const PolynomialBasis& basis, const Entropy& entropy);

/// Damped Newton on the dual problem with Armijo backtracking.
///
/// Throws RealizabilityLost when the moments are visibly outside the bounds,
/// the Hessian is numerically singular (condition estimate > 1e14), the line
/// search stalls, or max_iterations is exceeded.
DualSolution solve(const MomentVector& moments, const SolveOptions& options,
                   const PolynomialBasis& basis, const Entropy& entropy,
                   const MomentVector* warm_start = nullptr);

/// Cold-start multipliers (s'(u_0), 0, ..., 0), exact for constant states.
MomentVector initial_multipliers(const MomentVector& moments, const PolynomialBasis& basis,
                                 const Entropy& entropy);

/// Newton-step estimate of the curvature ratio, maximized over the nodes:
/// lambda_hat = lambda - zeta H^{-1} g.
double estimate_gamma(const MomentVector& lambda, const Eigen::VectorXd& gradient,
                      const Eigen::MatrixXd& hessian, double zeta, const Entropy& entropy,
                      const PolynomialBasis& basis);

/// <u_me(Lambda) phi>, the moments actually represented by the ansatz.
MomentVector recalculate_moments(const DualSolution& solution, const PolynomialBasis& basis,
                                 const Entropy& entropy);

}  // namespace ipm
