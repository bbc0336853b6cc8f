#include "ipm/kernels.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include "ipm/errors.hpp"

namespace ipm::kernels {

namespace {

Eigen::Index ix(int i) { return static_cast<Eigen::Index>(i); }

}  // namespace

void solve_columns(const Eigen::MatrixXd& moments, const std::vector<int>& columns,
                   Eigen::MatrixXd& multipliers, DualSweep& out, const SolveOptions& options,
                   const PolynomialBasis& basis, const Entropy& entropy, bool parallel) {
  const auto cols = moments.cols();
  const auto nq = static_cast<Eigen::Index>(basis.n_nodes());
  if (out.ansatz.rows() != nq || out.ansatz.cols() != cols) out.ansatz.setZero(nq, cols);
  if (out.recalculated.rows() != moments.rows() || out.recalculated.cols() != cols) {
    out.recalculated.setZero(moments.rows(), cols);
  }
  out.iterations.assign(static_cast<std::size_t>(cols), 0);
  out.margin.assign(static_cast<std::size_t>(cols), std::numeric_limits<double>::infinity());
  out.gamma.assign(static_cast<std::size_t>(cols), std::numeric_limits<double>::quiet_NaN());

  const int n = static_cast<int>(columns.size());
  std::vector<std::exception_ptr> errors(columns.size());
  const double lo = entropy.u_minus(), hi = entropy.u_plus();

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (int k = 0; k < n; ++k) {
    const int c = columns[static_cast<std::size_t>(k)];
    try {
      const MomentVector warm = multipliers.col(ix(c));
      const DualSolution sol =
          solve(moments.col(ix(c)), options, basis, entropy, &warm);
      multipliers.col(ix(c)) = sol.multipliers;
      out.ansatz.col(ix(c)) = sol.ansatz;
      out.recalculated.col(ix(c)) = basis.weighted_table().transpose() * sol.ansatz;
      const auto cs = static_cast<std::size_t>(c);
      out.iterations[cs] = sol.iterations;
      if (sol.gamma_estimate) out.gamma[cs] = *sol.gamma_estimate;
      double m = std::numeric_limits<double>::infinity();
      for (Eigen::Index q = 0; q < nq; ++q) {
        const double v = sol.ansatz(q);
        m = std::min(m, std::min(v - lo, hi - v));
      }
      out.margin[cs] = m;
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }

  // Report the lowest failing column so the outcome does not depend on
  // thread scheduling.
  int worst = -1;
  std::exception_ptr first;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (errors[k] && (worst < 0 || columns[k] < worst)) {
      worst = columns[k];
      first = errors[k];
    }
  }
  if (!first) return;
  try {
    std::rethrow_exception(first);
  } catch (const RealizabilityLost& e) {
    throw RealizabilityLost(e.reason(), static_cast<std::size_t>(worst));
  }
}

void galerkin_columns(const Eigen::MatrixXd& moments, const std::vector<int>& columns,
                      DualSweep& out, const PolynomialBasis& basis, bool parallel) {
  const auto cols = moments.cols();
  const auto nq = static_cast<Eigen::Index>(basis.n_nodes());
  if (out.ansatz.rows() != nq || out.ansatz.cols() != cols) out.ansatz.setZero(nq, cols);
  if (out.recalculated.rows() != moments.rows() || out.recalculated.cols() != cols) {
    out.recalculated.setZero(moments.rows(), cols);
  }
  out.iterations.assign(static_cast<std::size_t>(cols), 0);
  out.margin.assign(static_cast<std::size_t>(cols), std::numeric_limits<double>::infinity());
  out.gamma.assign(static_cast<std::size_t>(cols), std::numeric_limits<double>::quiet_NaN());
  const int n = static_cast<int>(columns.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k < n; ++k) {
    const int c = columns[static_cast<std::size_t>(k)];
    out.ansatz.col(ix(c)) = basis.table() * moments.col(ix(c));
    out.recalculated.col(ix(c)) = moments.col(ix(c));
  }
}

void half_slopes(const Eigen::MatrixXd& values, Eigen::MatrixXd& out, bool parallel) {
  const auto nq = values.rows();
  const int cols = static_cast<int>(values.cols());
  out.setZero(nq, values.cols());
#pragma omp parallel for schedule(static) if (parallel)
  for (int c = 1; c < cols - 1; ++c) {
    for (Eigen::Index q = 0; q < nq; ++q) {
      const double v = values(q, ix(c));
      out(q, ix(c)) = 0.5 * minmod(values(q, ix(c + 1)) - v, v - values(q, ix(c - 1)));
    }
  }
}

void interface_fluxes(const Eigen::MatrixXd& values, const Eigen::MatrixXd* half, int first,
                      int count, const PolynomialBasis& basis, const UpwindFlux& flux,
                      Eigen::MatrixXd& out, bool parallel) {
  const auto nq = static_cast<Eigen::Index>(basis.n_nodes());
  const auto& nodes = basis.rule().nodes;
  const Eigen::MatrixXd& w = basis.weighted_table();
  out.resize(w.cols(), count);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < count; ++i) {
    const Eigen::Index l = ix(first + i - 1), r = ix(first + i);
    Eigen::VectorXd g(nq);
    for (Eigen::Index q = 0; q < nq; ++q) {
      double ul = values(q, l), ur = values(q, r);
      if (half) {
        ul += (*half)(q, l);
        ur -= (*half)(q, r);
      }
      g(q) = flux(ul, ur, nodes[static_cast<std::size_t>(q)]);
    }
    out.col(ix(i)).noalias() = w.transpose() * g;
  }
}

void flux_divergence(const Eigen::MatrixXd& fluxes, double dx, Eigen::MatrixXd& out,
                     bool parallel) {
  const int n = static_cast<int>(fluxes.cols()) - 1;
  out.resize(fluxes.rows(), n);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < n; ++j) {
    out.col(ix(j)) = -(fluxes.col(ix(j + 1)) - fluxes.col(ix(j))) / dx;
  }
}

void linear_combination(const std::vector<double>& coeffs,
                        const std::vector<const Eigen::MatrixXd*>& terms, Eigen::MatrixXd& out,
                        bool parallel) {
  const auto rows = terms.front()->rows();
  const int cols = static_cast<int>(terms.front()->cols());
  out.resize(rows, cols);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < cols; ++j) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(rows);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (coeffs[k] != 0.0) acc += coeffs[k] * terms[k]->col(ix(j));
    }
    out.col(ix(j)) = acc;
  }
}

}  // namespace ipm::kernels
