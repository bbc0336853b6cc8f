#include "ipm/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ipm/errors.hpp"

namespace ipm {

std::string to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::Burgers: return "burgers";
    case FluxKind::Advection: return "advection";
    case FluxKind::UncertainAdvection: return "uncertain_advection";
  }
  return "unknown";
}

FluxKind parse_flux_kind(std::string_view name) {
  if (name == "burgers") return FluxKind::Burgers;
  if (name == "advection") return FluxKind::Advection;
  if (name == "uncertain_advection") return FluxKind::UncertainAdvection;
  throw ConfigError("unknown flux kind '" + std::string(name) + "'");
}

double max_wave_speed(const PhysicalFlux& flux, double u_minus, double u_plus) {
  switch (flux.kind()) {
    case FluxKind::Burgers: return std::max(std::abs(u_minus), std::abs(u_plus));
    case FluxKind::Advection: return std::abs(flux.speed());
    case FluxKind::UncertainAdvection:
      return std::max(std::abs(flux.speed() - 1.0), std::abs(flux.speed() + 1.0));
  }
  return 0.0;
}

UpwindFlux::UpwindFlux(const PhysicalFlux& flux, double u_minus, double u_plus)
    : flux_(flux), takes_left_(true) {
  double lo = 0.0, hi = 0.0;
  switch (flux.kind()) {
    case FluxKind::Burgers:
      lo = u_minus;
      hi = u_plus;
      break;
    case FluxKind::Advection:
      lo = hi = flux.speed();
      break;
    case FluxKind::UncertainAdvection:
      lo = flux.speed() - 1.0;
      hi = flux.speed() + 1.0;
      break;
  }
  if (lo >= 0.0) {
    takes_left_ = true;
  } else if (hi <= 0.0) {
    takes_left_ = false;
  } else {
    throw ConfigError("upwind flux needs sign-definite wave speeds, got range [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

void moment_flux(std::span<const double> left_values, std::span<const double> right_values,
                 const PolynomialBasis& basis, const UpwindFlux& flux,
                 Eigen::Ref<Eigen::VectorXd> out) {
  const auto nq = basis.n_nodes();
  if (left_values.size() != nq || right_values.size() != nq) {
    throw std::invalid_argument("moment_flux: samples not aligned with the quadrature rule");
  }
  const auto& nodes = basis.rule().nodes;
  const auto& w = basis.weighted_table();
  out.setZero();
  for (std::size_t q = 0; q < nq; ++q) {
    const double g = flux(left_values[q], right_values[q], nodes[q]);
    out += g * w.row(static_cast<Eigen::Index>(q)).transpose();
  }
}

MomentVector kinetic_flux(std::span<const double> left_dual, std::span<const double> right_dual,
                          const PolynomialBasis& basis, const Entropy& entropy,
                          const UpwindFlux& flux) {
  if (left_dual.size() != basis.n_nodes() || right_dual.size() != basis.n_nodes()) {
    throw std::invalid_argument("kinetic_flux: dual states not aligned with the rule");
  }
  std::vector<double> left(left_dual.size()), right(right_dual.size());
  for (std::size_t q = 0; q < left.size(); ++q) {
    left[q] = entropy.u_me(left_dual[q]);
    right[q] = entropy.u_me(right_dual[q]);
  }
  MomentVector out(basis.size());
  moment_flux(left, right, basis, flux, out);
  return out;
}

}  // namespace ipm
