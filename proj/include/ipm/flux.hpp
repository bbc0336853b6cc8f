#pragma once

#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "ipm/basis.hpp"
#include "ipm/entropy.hpp"
#include "ipm/quadrature.hpp"

namespace ipm {

enum class FluxKind { Burgers, Advection, UncertainAdvection };

std::string to_string(FluxKind kind);
FluxKind parse_flux_kind(std::string_view name);

/// Scalar flux f(u, xi). Burgers u^2/2, Advection a*u, UncertainAdvection
/// (11 + xi_0) u.
class PhysicalFlux {
 public:
  static PhysicalFlux burgers() { return PhysicalFlux(FluxKind::Burgers, 0.0); }
  static PhysicalFlux advection(double speed) { return PhysicalFlux(FluxKind::Advection, speed); }
  static PhysicalFlux uncertain_advection() {
    return PhysicalFlux(FluxKind::UncertainAdvection, 11.0);
  }

  FluxKind kind() const { return kind_; }
  double speed() const { return speed_; }

  double operator()(double u, const Node& xi) const {
    switch (kind_) {
      case FluxKind::Burgers: return 0.5 * u * u;
      case FluxKind::Advection: return speed_ * u;
      case FluxKind::UncertainAdvection: return (speed_ + xi[0]) * u;
    }
    return 0.0;
  }

  double wave_speed(double u, const Node& xi) const {
    switch (kind_) {
      case FluxKind::Burgers: return u;
      case FluxKind::Advection: return speed_;
      case FluxKind::UncertainAdvection: return speed_ + xi[0];
    }
    return 0.0;
  }

 private:
  PhysicalFlux(FluxKind kind, double speed) : kind_(kind), speed_(speed) {}
  FluxKind kind_;
  double speed_;
};

/// max |f'(u, xi)| over u in [u_minus, u_plus] and xi in [-1,1].
double max_wave_speed(const PhysicalFlux& flux, double u_minus, double u_plus);

/// Upwind numerical flux. The upwind side is fixed at construction from the
/// sign of the wave speed over the admissible range; a sign-indefinite range
/// is a ConfigError.
class UpwindFlux {
 public:
  UpwindFlux(const PhysicalFlux& flux, double u_minus, double u_plus);

  double operator()(double u_left, double u_right, const Node& xi) const {
    return flux_(takes_left_ ? u_left : u_right, xi);
  }

  bool takes_left() const { return takes_left_; }
  const PhysicalFlux& physical() const { return flux_; }

 private:
  PhysicalFlux flux_;
  bool takes_left_;
};

/// <g(left_q, right_q) phi> from ansatz values at the nodes.
void moment_flux(std::span<const double> left_values, std::span<const double> right_values,
                 const PolynomialBasis& basis, const UpwindFlux& flux,
                 Eigen::Ref<Eigen::VectorXd> out);

/// Kinetic flux <g(u_me(Lambda_l), u_me(Lambda_r)) phi> from dual states.
MomentVector kinetic_flux(std::span<const double> left_dual, std::span<const double> right_dual,
                          const PolynomialBasis& basis, const Entropy& entropy,
                          const UpwindFlux& flux);

}  // namespace ipm
