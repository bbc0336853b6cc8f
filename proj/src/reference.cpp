#include "ipm/reference.hpp"

#include <cstddef>

#include "ipm/kernels.hpp"

namespace ipm::reference {

namespace {

struct Closed {
  std::vector<double> values;  // ansatz at the nodes
  MomentVector moments;        // moments represented by those values
};

Closed close_cell(const MomentVector& u, Base base, const PolynomialBasis& basis,
                  const Entropy& entropy, const SolveOptions& options) {
  Closed c;
  c.values.resize(basis.n_nodes());
  if (base == Base::Galerkin) {
    for (std::size_t q = 0; q < basis.n_nodes(); ++q) {
      c.values[q] = basis.evaluate(basis.rule().nodes[q]).dot(u);
    }
    c.moments = u;
    return c;
  }
  const DualSolution sol = solve(u, options, basis, entropy);
  for (std::size_t q = 0; q < basis.n_nodes(); ++q) {
    c.values[q] = entropy.u_me(sol.dual_state(static_cast<Eigen::Index>(q)));
  }
  c.moments = basis.moments_of(c.values);
  return c;
}

// Cells with `width` ghost layers on each side.
std::vector<MomentVector> extend(const std::vector<MomentVector>& cells, const Boundary& b,
                                 int width) {
  const int n = static_cast<int>(cells.size());
  std::vector<MomentVector> ext;
  for (int k = width; k >= 1; --k) {
    ext.push_back(b.left ? *b.left : cells[static_cast<std::size_t>(n - k)]);
  }
  ext.insert(ext.end(), cells.begin(), cells.end());
  for (int k = 0; k < width; ++k) {
    ext.push_back(b.right ? *b.right : cells[static_cast<std::size_t>(k)]);
  }
  return ext;
}

}  // namespace

std::vector<MomentVector> first_order_step(const std::vector<MomentVector>& cells,
                                           const Boundary& boundary, Base base, double dt,
                                           double dx, const PolynomialBasis& basis,
                                           const Entropy& entropy, const UpwindFlux& flux,
                                           const SolveOptions& options) {
  const auto ext = extend(cells, boundary, 1);
  std::vector<Closed> closed;
  for (const auto& u : ext) closed.push_back(close_cell(u, base, basis, entropy, options));

  std::vector<MomentVector> next;
  for (std::size_t j = 1; j + 1 < ext.size(); ++j) {
    MomentVector right(basis.size()), left(basis.size());
    moment_flux(closed[j].values, closed[j + 1].values, basis, flux, right);
    moment_flux(closed[j - 1].values, closed[j].values, basis, flux, left);
    const MomentVector& start = base == Base::Raw ? ext[j] : closed[j].moments;
    next.push_back(start - dt / dx * (right - left));
  }
  return next;
}

std::vector<MomentVector> second_order_euler_step(const std::vector<MomentVector>& cells,
                                                  const Boundary& boundary, double dt, double dx,
                                                  const PolynomialBasis& basis,
                                                  const Entropy& entropy, const UpwindFlux& flux,
                                                  const SolveOptions& options) {
  const auto ext = extend(cells, boundary, 2);
  std::vector<Closed> closed;
  for (const auto& u : ext) {
    closed.push_back(close_cell(u, Base::Recalculated, basis, entropy, options));
  }
  const std::size_t nq = basis.n_nodes();

  // edge values: minus = left edge, plus = right edge of each interior-or-first-ghost cell
  std::vector<std::vector<double>> minus(ext.size(), std::vector<double>(nq));
  std::vector<std::vector<double>> plus(ext.size(), std::vector<double>(nq));
  for (std::size_t c = 1; c + 1 < ext.size(); ++c) {
    for (std::size_t q = 0; q < nq; ++q) {
      const double v = closed[c].values[q];
      const double slope_dx =
          kernels::minmod(closed[c + 1].values[q] - v, v - closed[c - 1].values[q]);
      minus[c][q] = v - 0.5 * slope_dx;
      plus[c][q] = v + 0.5 * slope_dx;
    }
  }

  std::vector<MomentVector> next;
  for (std::size_t j = 2; j + 2 < ext.size(); ++j) {
    MomentVector right(basis.size()), left(basis.size());
    moment_flux(plus[j], minus[j + 1], basis, flux, right);
    moment_flux(plus[j - 1], minus[j], basis, flux, left);
    next.push_back(closed[j].moments - dt / dx * (right - left));
  }
  return next;
}

}  // namespace ipm::reference
