#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "ipm/basis.hpp"
#include "ipm/dual_solver.hpp"
#include "ipm/entropy.hpp"
#include "ipm/flux.hpp"

// Per-time-step building blocks that loop over cells. Every kernel takes a
// `parallel` flag; with it off the loops run on the calling thread. Each cell
// or interface writes only its own column, so both modes give bitwise equal
// results.
namespace ipm::kernels {

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) <= std::abs(b) ? a : b;
}

struct DualSweep {
  Eigen::MatrixXd ansatz;        // [nodes x cols]
  Eigen::MatrixXd recalculated;  // [moments x cols]
  std::vector<int> iterations;
  std::vector<double> margin;    // min distance of the ansatz to the bounds
  std::vector<double> gamma;     // NaN when no gamma target was requested
};

/// Solves the dual problem for the listed columns of `moments`, warm started
/// from (and writing back to) the matching columns of `multipliers`. Columns
/// not listed are left untouched in the outputs. On failure the exception of
/// the lowest failing column index is rethrown with that column as its cell.
void solve_columns(const Eigen::MatrixXd& moments, const std::vector<int>& columns,
                   Eigen::MatrixXd& multipliers, DualSweep& out, const SolveOptions& options,
                   const PolynomialBasis& basis, const Entropy& entropy, bool parallel);

/// Stochastic-Galerkin ansatz u^T phi at the nodes for the listed columns.
void galerkin_columns(const Eigen::MatrixXd& moments, const std::vector<int>& columns,
                      DualSweep& out, const PolynomialBasis& basis, bool parallel);

/// Half of the minmod increment per node, 0.5 * minmod(v_{c+1}-v_c, v_c-v_{c-1}),
/// for columns 1..cols-2; the outermost columns get zero.
void half_slopes(const Eigen::MatrixXd& values, Eigen::MatrixXd& out, bool parallel);

/// Numerical fluxes at the interfaces between columns (first + i - 1) and
/// (first + i), i = 0..count-1. With `half` the edge values are
/// v -/+ half, otherwise the cell values themselves.
void interface_fluxes(const Eigen::MatrixXd& values, const Eigen::MatrixXd* half, int first,
                      int count, const PolynomialBasis& basis, const UpwindFlux& flux,
                      Eigen::MatrixXd& out, bool parallel);

/// L_j = -(F_{j+1/2} - F_{j-1/2}) / dx from count+1 interface fluxes.
void flux_divergence(const Eigen::MatrixXd& fluxes, double dx, Eigen::MatrixXd& out,
                     bool parallel);

/// out = sum_k coeffs[k] * terms[k], column-parallel.
void linear_combination(const std::vector<double>& coeffs,
                        const std::vector<const Eigen::MatrixXd*>& terms, Eigen::MatrixXd& out,
                        bool parallel);

}  // namespace ipm::kernels
