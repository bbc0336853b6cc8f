#include "ipm/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ipm/errors.hpp"

namespace ipm {

namespace {

struct Evaluation {
  Eigen::VectorXd dual;
  Eigen::VectorXd values;
  Eigen::VectorXd residual;  // u_me - shift at each node
  Eigen::VectorXd derivative;
  Eigen::VectorXd gradient;
  double objective = 0.0;
  double objective_scale = 0.0;
  double gradient_norm = 0.0;
};

// The gradient is formed relative to a shift close to the data so that
// moments sitting right next to a bound keep their relative accuracy:
//   <u_me phi_i> - u_i = sum_q w_q phi_i(xi_q) (u_me_q - c) + c <phi_i>_defect
//                        + (c delta_i0 - u_i).
class DualProblem {
 public:
  DualProblem(const MomentVector& moments, const PolynomialBasis& basis, const Entropy& entropy)
      : u_(moments), basis_(basis), entropy_(entropy) {
    shift_ = moments(0);
    if (entropy.bounded()) shift_ = std::clamp(shift_, entropy.u_minus(), entropy.u_plus());
    shifted_moments_ = -u_;
    shifted_moments_(0) += shift_;
  }

  // Returns false on non-finite dual states.
  bool evaluate(const MomentVector& lambda, Evaluation& ev) const {
    const auto& w = basis_.rule().weights;
    ev.dual.noalias() = basis_.table() * lambda;
    const auto nq = ev.dual.size();
    ev.values.resize(nq);
    ev.residual.resize(nq);
    ev.derivative.resize(nq);
    const double lo = entropy_.u_minus();
    const double hi = entropy_.u_plus();
    double objective = 0.0;
    double scale = 0.0;
    for (Eigen::Index q = 0; q < nq; ++q) {
      const double d = ev.dual(q);
      if (!std::isfinite(d)) return false;
      const Ansatz a = entropy_.ansatz(d);
      ev.values(q) = a.value;
      if (!entropy_.bounded()) {
        ev.residual(q) = a.value - shift_;
      } else if (a.below_upper < a.above_lower) {
        ev.residual(q) = (hi - shift_) - a.below_upper;
      } else {
        ev.residual(q) = (lo - shift_) + a.above_lower;
      }
      ev.derivative(q) = entropy_.u_me_derivative(a);
      const double sd = entropy_.legendre_dual(d);
      objective += w[q] * sd;
      scale += w[q] * std::abs(sd);
    }
    const double linear = lambda.dot(u_);
    ev.objective = objective - linear;
    ev.objective_scale = scale + std::abs(linear);
    ev.gradient.noalias() = basis_.weighted_table().transpose() * ev.residual;
    ev.gradient += shift_ * basis_.mean_defect() + shifted_moments_;
    ev.gradient_norm = ev.gradient.norm();
    return std::isfinite(ev.objective) && std::isfinite(ev.gradient_norm);
  }

  Eigen::MatrixXd hessian(const Evaluation& ev) const {
    return basis_.weighted_table().transpose() * (ev.derivative.asDiagonal() * basis_.table());
  }

 private:
  const MomentVector& u_;
  const PolynomialBasis& basis_;
  const Entropy& entropy_;
  double shift_ = 0.0;
  Eigen::VectorXd shifted_moments_;
};

struct Factorization {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double condition = 1.0;
};

// Cholesky with one diagonal-regularized retry.
Factorization factorize(Eigen::MatrixXd hessian) {
  Factorization f;
  f.llt.compute(hessian);
  if (f.llt.info() != Eigen::Success) {
    const double shift = 1e-13 * hessian.trace() / static_cast<double>(hessian.rows());
    hessian.diagonal().array() += shift;
    f.llt.compute(hessian);
    if (f.llt.info() != Eigen::Success) {
      throw RealizabilityLost("Hessian is not positive definite");
    }
  }
  const Eigen::VectorXd diag = f.llt.matrixLLT().diagonal();
  const double lo = diag.minCoeff();
  const double hi = diag.maxCoeff();
  f.condition = lo > 0.0 ? (hi / lo) * (hi / lo) : std::numeric_limits<double>::infinity();
  if (!(f.condition <= 1e14)) {
    throw RealizabilityLost("Hessian numerically singular (condition estimate " +
                            std::to_string(f.condition) + ")");
  }
  return f;
}

double gamma_ratio(const Eigen::VectorXd& dual, const Eigen::VectorXd& dual_hat,
                   const Entropy& entropy) {
  double worst = 1.0;
  for (Eigen::Index q = 0; q < dual.size(); ++q) {
    worst = std::max(worst, curvature_ratio(entropy, dual_hat(q), dual(q)));
  }
  return worst;
}

void check_options(const SolveOptions& o) {
  if (!(o.tau > 0.0)) throw std::invalid_argument("solve: tau must be positive");
  if (!(o.zeta >= 1.0)) throw std::invalid_argument("solve: zeta must be >= 1");
  if (o.gamma_target && !(*o.gamma_target > 1.0)) {
    throw std::invalid_argument("solve: gamma must be > 1");
  }
  if (o.max_iterations < 0) throw std::invalid_argument("solve: negative max_iterations");
}

}  // namespace

DualObjective dual_objective(const MomentVector& lambda, const MomentVector& moments,
                             const PolynomialBasis& basis, const Entropy& entropy) {
  DualProblem problem(moments, basis, entropy);
  Evaluation ev;
  problem.evaluate(lambda, ev);
  return DualObjective{ev.objective, ev.gradient, problem.hessian(ev)};
}

MomentVector initial_multipliers(const MomentVector& moments, const PolynomialBasis& basis,
                                 const Entropy& entropy) {
  MomentVector lambda = MomentVector::Zero(basis.size());
  double u0 = moments(0);
  if (entropy.bounded()) {
    const double eps = 1e-10 * (entropy.u_plus() - entropy.u_minus());
    u0 = std::clamp(u0, entropy.u_minus() + eps, entropy.u_plus() - eps);
  }
  lambda(0) = entropy.s_prime(u0);
  return lambda;
}

DualSolution solve(const MomentVector& moments, const SolveOptions& options,
                   const PolynomialBasis& basis, const Entropy& entropy,
                   const MomentVector* warm_start) {
  check_options(options);
  if (moments.size() != basis.size()) {
    throw std::invalid_argument("solve: moment vector has wrong length");
  }
  if (!moments.allFinite()) throw RealizabilityLost("non-finite moments");
  if (entropy.bounded()) {
    const double lo = entropy.u_minus();
    const double hi = entropy.u_plus();
    const double slack = 1e-14 * (std::abs(lo) + std::abs(hi) + (hi - lo));
    if (moments(0) < lo - slack || moments(0) > hi + slack) {
      throw RealizabilityLost("zeroth moment " + std::to_string(moments(0)) +
                              " outside the entropy bounds");
    }
  }

  DualProblem problem(moments, basis, entropy);
  MomentVector lambda = (warm_start && warm_start->size() == basis.size() &&
                         warm_start->allFinite())
                            ? *warm_start
                            : initial_multipliers(moments, basis, entropy);
  Evaluation current, trial;
  if (!problem.evaluate(lambda, current)) {
    lambda = initial_multipliers(moments, basis, entropy);
    if (!problem.evaluate(lambda, current)) throw RealizabilityLost("non-finite initial state");
  }

  DualSolution solution;
  std::optional<double> condition;
  for (int iteration = 0;; ++iteration) {
    const bool tau_met = current.gradient_norm < options.tau;
    if (tau_met && !options.gamma_target && iteration >= options.min_iterations) break;
    if (iteration >= options.max_iterations) {
      throw RealizabilityLost("dual solve did not converge in " +
                              std::to_string(options.max_iterations) + " iterations");
    }
    const Factorization f = factorize(problem.hessian(current));
    condition = f.condition;
    const Eigen::VectorXd direction = -f.llt.solve(current.gradient);

    if (tau_met) {
      const Eigen::VectorXd dual_hat =
          basis.table() * (lambda + options.zeta * direction);
      const double ratio = gamma_ratio(current.dual, dual_hat, entropy);
      solution.gamma_estimate = ratio;
      if (ratio <= *options.gamma_target) break;
    }

    const double slope = current.gradient.dot(direction);
    bool accepted = false;
    double t = 1.0;
    for (int k = 0; k < 60 && !accepted; ++k, t *= 0.5) {
      const MomentVector candidate = lambda + t * direction;
      if (!problem.evaluate(candidate, trial)) continue;
      const double change = trial.objective - current.objective;
      const double noise = 1e-13 * (current.objective_scale + trial.objective_scale);
      // Armijo, or a gradient decrease once objective differences are at
      // round-off level.
      if (change <= 1e-4 * t * slope ||
          (change <= noise && trial.gradient_norm < current.gradient_norm)) {
        lambda = candidate;
        std::swap(current, trial);
        accepted = true;
      }
    }
    if (!accepted) {
      // Already within tolerance and nothing left to gain at round-off level.
      if (tau_met && !options.gamma_target) break;
      throw RealizabilityLost("line search failed to make progress");
    }
    solution.iterations = iteration + 1;
  }

  solution.multipliers = lambda;
  solution.dual_state = current.dual;
  solution.ansatz = current.values;
  solution.gradient_norm = current.gradient_norm;
  if (!condition) {
    Eigen::LLT<Eigen::MatrixXd> llt(problem.hessian(current));
    const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
    const double ratio = diag.maxCoeff() / diag.minCoeff();
    condition = llt.info() == Eigen::Success ? ratio * ratio
                                              : std::numeric_limits<double>::infinity();
  }
  solution.condition_estimate = *condition;
  return solution;
}

double estimate_gamma(const MomentVector& lambda, const Eigen::VectorXd& gradient,
                      const Eigen::MatrixXd& hessian, double zeta, const Entropy& entropy,
                      const PolynomialBasis& basis) {
  const Factorization f = factorize(hessian);
  const MomentVector lambda_hat = lambda - zeta * f.llt.solve(gradient);
  return gamma_ratio(basis.table() * lambda, basis.table() * lambda_hat, entropy);
}

MomentVector recalculate_moments(const DualSolution& solution, const PolynomialBasis& basis,
                                 const Entropy& entropy) {
  Eigen::VectorXd values(solution.dual_state.size());
  for (Eigen::Index q = 0; q < values.size(); ++q) {
    values(q) = entropy.u_me(solution.dual_state(q));
  }
  return basis.weighted_table().transpose() * values;
}

}  // namespace ipm
