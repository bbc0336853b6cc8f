#include <cmath>
#include <vector>

#include "doctest.h"
#include "ipm/basis.hpp"
#include "ipm/entropy.hpp"
#include "ipm/errors.hpp"
#include "ipm/flux.hpp"
#include "ipm/quadrature.hpp"
#include "test_support.hpp"

using namespace ipm;

TEST_CASE("upwind flux values") {
  const UpwindFlux burgers(PhysicalFlux::burgers(), 3.0, 12.0);
  CHECK(burgers.takes_left());
  CHECK(burgers(4.0, 10.0, {0.0, 0.0}) == 8.0);
  CHECK(burgers(5.0, 5.0, {0.0, 0.0}) == 12.5);

  const UpwindFlux uadv(PhysicalFlux::uncertain_advection(), 0.0, 1.0);
  CHECK(uadv(2.0, 7.0, {-1.0, 0.0}) == 20.0);
  CHECK(uadv(2.0, 7.0, {1.0, 0.0}) == 24.0);

  const UpwindFlux left_moving(PhysicalFlux::advection(-2.0), 0.0, 1.0);
  CHECK_FALSE(left_moving.takes_left());
  CHECK(left_moving(1.0, 3.0, {0.0, 0.0}) == -6.0);

  CHECK_THROWS_AS(UpwindFlux(PhysicalFlux::burgers(), -1.0, 1.0), ConfigError);
}

TEST_CASE("maximum wave speeds") {
  CHECK(max_wave_speed(PhysicalFlux::burgers(), 3.0, 12.5) == 12.5);
  CHECK(max_wave_speed(PhysicalFlux::burgers(), -7.0, 2.0) == 7.0);
  CHECK(max_wave_speed(PhysicalFlux::uncertain_advection(), 0.0, 1.0) == 12.0);
  CHECK(max_wave_speed(PhysicalFlux::advection(1.0), 0.0, 1.0) == 1.0);
}

TEST_CASE("kinetic flux of constant states") {
  const PolynomialBasis basis(4, gauss_legendre(40));
  const auto e = Entropy::bounded_barrier(3.0, 12.0);
  const UpwindFlux g(PhysicalFlux::burgers(), 3.0, 12.0);
  const double c = 5.0;
  std::vector<double> dual(basis.n_nodes(), e.s_prime(c));
  const MomentVector f = kinetic_flux(dual, dual, basis, e, g);
  CHECK(std::abs(f(0) - 12.5) < 1e-12);
  CHECK(f.tail(4).cwiseAbs().maxCoeff() < 1e-12);

  std::vector<double> left(basis.n_nodes(), 12.0), right(basis.n_nodes(), 3.0);
  Eigen::VectorXd out(5);
  moment_flux(left, right, basis, g, out);
  CHECK(std::abs(out(0) - 72.0) < 1e-12);
  CHECK(out.tail(4).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("property: kinetic flux equals a brute-force quadrature sum") {
  testing::Gen gen(31);
  const PolynomialBasis basis(4, gauss_legendre(40));
  const auto e = Entropy::log_barrier(3.0, 12.0);
  for (const auto& phys : {PhysicalFlux::burgers(), PhysicalFlux::uncertain_advection()}) {
    const UpwindFlux g(phys, 3.0, 12.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> l(basis.n_nodes()), r(basis.n_nodes());
      for (auto& v : l) v = gen.uniform(-3.0, 3.0);
      for (auto& v : r) v = gen.uniform(-3.0, 3.0);
      const MomentVector got = kinetic_flux(l, r, basis, e, g);

      MomentVector expected = MomentVector::Zero(5);
      const auto& rule = basis.rule();
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double ul = e.u_me(l[q]);
        const double ur = e.u_me(r[q]);
        const double xi = rule.nodes[q][0];
        double flux_value = 0.0;
        if (phys.kind() == FluxKind::Burgers) {
          flux_value = 0.5 * ul * ul;  // speeds are positive on [3, 12]
        } else {
          flux_value = (11.0 + xi) * ul;
        }
        for (int i = 0; i < 5; ++i) {
          expected(i) += rule.weights[q] * flux_value * normalized_legendre(i, xi);
        }
      }
      CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("flux kind names") {
  for (auto k : {FluxKind::Burgers, FluxKind::Advection, FluxKind::UncertainAdvection}) {
    CHECK(parse_flux_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_flux_kind("euler"), ConfigError);
}
