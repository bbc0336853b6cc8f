#pragma once

#include <optional>
#include <vector>

#include "ipm/basis.hpp"
#include "ipm/dual_solver.hpp"
#include "ipm/entropy.hpp"
#include "ipm/flux.hpp"

// Straightforward single-threaded versions of the finite-volume updates,
// written directly from the update formulas with one cold-started dual solve
// per cell. Slow, but a useful independent check of Simulation.
namespace ipm::reference {

struct Boundary {
  /// Dirichlet ghost moments; both empty means periodic.
  std::optional<MomentVector> left;
  std::optional<MomentVector> right;
};

enum class Base { Raw, Recalculated, Galerkin };

/// u_j <- base_j - dt/dx (G_{j+1/2} - G_{j-1/2}) with the kinetic upwind flux.
std::vector<MomentVector> first_order_step(const std::vector<MomentVector>& cells,
                                           const Boundary& boundary, Base base, double dt,
                                           double dx, const PolynomialBasis& basis,
                                           const Entropy& entropy, const UpwindFlux& flux,
                                           const SolveOptions& options);

/// Forward-Euler step of the minmod-reconstructed scheme on recalculated
/// ansatz values.
std::vector<MomentVector> second_order_euler_step(const std::vector<MomentVector>& cells,
                                                  const Boundary& boundary, double dt, double dx,
                                                  const PolynomialBasis& basis,
                                                  const Entropy& entropy, const UpwindFlux& flux,
                                                  const SolveOptions& options);

}  // namespace ipm::reference
