#include <cmath>
#include <vector>

#include "doctest.h"
#include "ipm/basis.hpp"
#include "ipm/dual_solver.hpp"
#include "ipm/entropy.hpp"
#include "ipm/errors.hpp"
#include "ipm/quadrature.hpp"
#include "test_support.hpp"

using namespace ipm;

namespace {

MomentVector constant_moments(int n, double c) {
  MomentVector u = MomentVector::Zero(n);
  u(0) = c;
  return u;
}

// <u_me(lambda^T phi) phi> computed node by node, independent of the solver.
MomentVector synthesize(const MomentVector& lambda, const PolynomialBasis& basis,
                        const Entropy& e) {
  MomentVector u = MomentVector::Zero(basis.size());
  const auto& rule = basis.rule();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd phi = basis.evaluate(rule.nodes[q]);
    u += rule.weights[q] * e.u_me(lambda.dot(phi)) * phi;
  }
  return u;
}

}  // namespace

TEST_CASE("dual objective at the constant solution has zero gradient") {
  const PolynomialBasis basis(4, gauss_legendre(40));
  for (const auto& e : {Entropy::bounded_barrier(3.0, 12.0), Entropy::log_barrier(3.0, 12.0)}) {
    for (double c : {3.5, 7.5, 11.9}) {
      MomentVector lambda = MomentVector::Zero(5);
      lambda(0) = e.s_prime(c);
      const auto obj = dual_objective(lambda, constant_moments(5, c), basis, e);
      CHECK(obj.gradient.norm() < 1e-12);
    }
  }
}

TEST_CASE("quadratic entropy Hessian is the Gram matrix") {
  const PolynomialBasis basis(6, gauss_legendre(40));
  MomentVector lambda(7);
  lambda << 0.3, -1.0, 2.0, 0.1, 0.0, 0.5, -0.2;
  const auto obj = dual_objective(lambda, constant_moments(7, 1.0), basis, Entropy::quadratic());
  CHECK((obj.hessian - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("property: Hessian matches finite differences of the gradient") {
  testing::Gen gen(77);
  const PolynomialBasis basis(4, gauss_legendre(40));
  const double h = 1e-6;
  for (const auto& e : {Entropy::bounded_barrier(3.0, 12.0), Entropy::log_barrier(3.0, 12.0)}) {
    const MomentVector u = constant_moments(5, 7.0);
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      MomentVector lambda(5);
      for (int i = 0; i < 5; ++i) lambda(i) = gen.uniform(-0.5, 0.5);
      const auto obj = dual_objective(lambda, u, basis, e);
      for (int j = 0; j < 5; ++j) {
        MomentVector lp = lambda, lm = lambda;
        lp(j) += h;
        lm(j) -= h;
        const Eigen::VectorXd fd = (dual_objective(lp, u, basis, e).gradient -
                                    dual_objective(lm, u, basis, e).gradient) /
                                   (2.0 * h);
        worst = std::max(worst, (fd - obj.hessian.col(j)).cwiseAbs().maxCoeff());
      }
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("gradient matches finite differences of the objective") {
  const PolynomialBasis basis(3, gauss_legendre(20));
  const auto e = Entropy::bounded_barrier(0.0, 1.0);
  MomentVector lambda(4);
  lambda << 0.2, -0.4, 0.3, 0.1;
  MomentVector u(4);
  u << 0.5, 0.05, -0.02, 0.01;
  const auto obj = dual_objective(lambda, u, basis, e);
  const double h = 1e-6;
  for (int j = 0; j < 4; ++j) {
    MomentVector lp = lambda, lm = lambda;
    lp(j) += h;
    lm(j) -= h;
    const double fd =
        (dual_objective(lp, u, basis, e).value - dual_objective(lm, u, basis, e).value) / (2 * h);
    CHECK(std::abs(fd - obj.gradient(j)) < 1e-7);
  }
}

TEST_CASE("solve a constant state") {
  const PolynomialBasis basis(4, gauss_legendre(40));
  const auto e = Entropy::bounded_barrier(3.0, 12.0);
  SolveOptions opts;
  opts.tau = 1e-10;
  const auto sol = solve(constant_moments(5, 7.5), opts, basis, e);
  CHECK(std::abs(sol.multipliers(0) - e.s_prime(7.5)) < 1e-10);
  CHECK(sol.multipliers.tail(4).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(sol.gradient_norm < opts.tau);
  const MomentVector back = recalculate_moments(sol, basis, e);
  CHECK((back - constant_moments(5, 7.5)).norm() < opts.tau);
}

TEST_CASE("synthesis then inversion recovers the multipliers") {
  const PolynomialBasis basis(2, gauss_legendre(40));
  const auto e = Entropy::bounded_barrier(3.0, 12.0);
  MomentVector target(3);
  target << 0.3, -0.8, 0.1;
  const MomentVector u = synthesize(target, basis, e);
  SolveOptions opts;
  opts.tau = 1e-10;
  const auto sol = solve(u, opts, basis, e);
  CHECK((sol.multipliers - target).cwiseAbs().maxCoeff() < 1e-7);
  CHECK((recalculate_moments(sol, basis, e) - u).norm() < 1e-10);
}

TEST_CASE("property: synthesis-inversion over random multipliers") {
  testing::Gen gen(4242);
  const PolynomialBasis basis(4, gauss_legendre(40));
  int checked = 0;
  for (const auto& e : {Entropy::bounded_barrier(3.0, 12.0), Entropy::log_barrier(3.0, 12.0)}) {
    for (int trial = 0; trial < 50; ++trial) {
      MomentVector target(5);
      for (int i = 0; i < 5; ++i) target(i) = gen.uniform(-1.0, 1.0) / (1.0 + i);
      const MomentVector u = synthesize(target, basis, e);
      SolveOptions opts;
      opts.tau = 1e-10;
      const auto sol = solve(u, opts, basis, e);
      CHECK((sol.multipliers - target).cwiseAbs().maxCoeff() < 1e-7);
      ++checked;
    }
  }
  CHECK(checked == 100);
}

TEST_CASE("solver iterates are monotone in the objective") {
  const PolynomialBasis basis(4, gauss_legendre(40));
  const auto e = Entropy::bounded_barrier(3.0, 12.0);
  MomentVector target(5);
  target << 1.0, -2.0, 1.5, 0.5, -0.3;
  const MomentVector u = synthesize(target, basis, e);
  double previous = dual_objective(initial_multipliers(u, basis, e), u, basis, e).value;
  for (double tau : {1e-1, 1e-2, 1e-4, 1e-6, 1e-9}) {
    SolveOptions opts;
    opts.tau = tau;
    const auto sol = solve(u, opts, basis, e);
    const double value = dual_objective(sol.multipliers, u, basis, e).value;
    CHECK(value <= previous + 1e-12 * std::abs(previous));
    CHECK(sol.gradient_norm < tau);
    previous = value;
  }
}

TEST_CASE("unrealizable moments raise RealizabilityLost") {
  const PolynomialBasis basis(4, gauss_legendre(40));
  const auto e = Entropy::bounded_barrier(3.0, 12.0);
  SolveOptions opts;
  CHECK_THROWS_AS(solve(constant_moments(5, 12.5), opts, basis, e), RealizabilityLost);
  CHECK_THROWS_AS(solve(constant_moments(5, 2.0), opts, basis, e), RealizabilityLost);

  // Mean inside the bounds but a first coefficient no bounded function can have.
  MomentVector u = constant_moments(5, 7.5);
  u(1) = 10.0;
  CHECK_THROWS_AS(solve(u, opts, basis, e), RealizabilityLost);
}

TEST_CASE("warm start and minimum iterations") {
  const PolynomialBasis basis(4, gauss_legendre(40));
  const auto e = Entropy::bounded_barrier(3.0, 12.0);
  MomentVector target(5);
  target << 0.3, 0.5, -0.2, 0.1, 0.05;
  const MomentVector u = synthesize(target, basis, e);
  SolveOptions opts;
  opts.tau = 1e-9;
  const auto cold = solve(u, opts, basis, e);
  const auto warm = solve(u, opts, basis, e, &cold.multipliers);
  CHECK(warm.iterations == 0);
  opts.min_iterations = 2;
  const auto forced = solve(u, opts, basis, e, &cold.multipliers);
  CHECK(forced.iterations >= 1);
  CHECK(forced.gradient_norm <= cold.gradient_norm + 1e-15);
}

TEST_CASE("estimate_gamma") {
  const PolynomialBasis basis(4, gauss_legendre(40));
  const auto bb = Entropy::bounded_barrier(3.0, 12.0);
  MomentVector lambda(5);
  lambda << 0.2, 0.3, -0.1, 0.0, 0.05;
  const Eigen::MatrixXd h = dual_objective(lambda, constant_moments(5, 7.0), basis, bb).hessian;
  CHECK(estimate_gamma(lambda, Eigen::VectorXd::Zero(5), h, 5.0, bb, basis) == 1.0);

  const auto quad = Entropy::quadratic();
  const Eigen::MatrixXd hq = Eigen::MatrixXd::Identity(5, 5);
  Eigen::VectorXd g(5);
  g << 1.0, -2.0, 0.5, 0.3, 0.1;
  CHECK(estimate_gamma(lambda, g, hq, 3.0, quad, basis) == 1.0);
}

TEST_CASE("estimate_gamma with zeta = 5 overbounds the one-moment ratio") {
  const PolynomialBasis basis(0, gauss_legendre(40));
  const auto e = Entropy::bounded_barrier(3.0, 12.0);
  for (double u0 : {4.0, 7.5, 11.0}) {
    for (double offset : {-0.05, 0.02, 0.1}) {
      const MomentVector u = constant_moments(1, u0);
      MomentVector lambda(1);
      lambda(0) = e.s_prime(u0) + offset;  // an approximate multiplier
      const auto obj = dual_objective(lambda, u, basis, e);
      const double estimate = estimate_gamma(lambda, obj.gradient, obj.hessian, 5.0, e, basis);
      // Exact multiplier is s'(u0) in closed form.
      const double truth = e.s_double_prime(u0) / e.s_double_prime(e.u_me(lambda(0)));
      INFO("u0 = " << u0 << ", offset = " << offset);
      CHECK(estimate >= truth - 1e-12);
      CHECK(estimate >= 1.0);
    }
  }
}

TEST_CASE("gamma target forces extra iterations") {
  const PolynomialBasis basis(4, gauss_legendre(40));
  const auto e = Entropy::bounded_barrier(3.0, 12.0);
  MomentVector target(5);
  target << 0.3, 0.5, -0.2, 0.1, 0.05;
  const MomentVector u = synthesize(target, basis, e);
  SolveOptions loose;
  loose.tau = 1e-2;
  SolveOptions strict = loose;
  strict.gamma_target = 1.0 + 1e-9;
  strict.zeta = 5.0;
  const auto a = solve(u, loose, basis, e);
  const auto b = solve(u, strict, basis, e);
  REQUIRE(b.gamma_estimate.has_value());
  CHECK(*b.gamma_estimate <= 1.0 + 1e-9);
  CHECK(b.iterations >= a.iterations);
  CHECK(b.gradient_norm <= a.gradient_norm);
}

TEST_CASE("recalculated mean stays inside the bounds") {
  testing::Gen gen(8);
  const PolynomialBasis basis(4, gauss_legendre(40));
  const auto e = Entropy::log_barrier(3.0, 12.0);
  for (int trial = 0; trial < 20; ++trial) {
    MomentVector target(5);
    for (int i = 0; i < 5; ++i) target(i) = gen.uniform(-3.0, 3.0);
    const MomentVector u = synthesize(target, basis, e);
    SolveOptions opts;
    opts.tau = 1e-3;
    const auto sol = solve(u, opts, basis, e);
    const MomentVector ubar = recalculate_moments(sol, basis, e);
    CHECK(ubar(0) > 3.0);
    CHECK(ubar(0) < 12.0);
  }
}

TEST_CASE("invalid options") {
  const PolynomialBasis basis(2, gauss_legendre(10));
  const auto e = Entropy::bounded_barrier(0.0, 1.0);
  SolveOptions opts;
  opts.tau = 0.0;
  CHECK_THROWS_AS(solve(constant_moments(3, 0.5), opts, basis, e), std::invalid_argument);
  opts.tau = 1e-6;
  opts.zeta = 0.5;
  CHECK_THROWS_AS(solve(constant_moments(3, 0.5), opts, basis, e), std::invalid_argument);
  opts.zeta = 1.0;
  CHECK_THROWS_AS(solve(constant_moments(4, 0.5), opts, basis, e), std::invalid_argument);
}
