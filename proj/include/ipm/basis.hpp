#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ipm/quadrature.hpp"

namespace ipm {

/// Generalized Fourier coefficients <u phi_i>, i = 0..N, of one cell.
using MomentVector = Eigen::VectorXd;

/// Orthonormal Legendre chaos basis phi_0..phi_N for the uniform density,
/// bound to a quadrature rule with the evaluation table precomputed.
///
/// In two random dimensions the basis is the tensor products
/// phi_a(xi_0) phi_b(xi_1) ordered by total degree a+b, and within one total
/// degree by decreasing a; the first N+1 of that list are kept. For N+1 = 5
/// this gives (0,0), (1,0), (0,1), (2,0), (1,1).
class PolynomialBasis {
 public:
  PolynomialBasis() = default;

  /// Throws ConfigError when the rule cannot orthonormalize the basis
  /// (Gram matrix off the identity by more than 1e-8).
  PolynomialBasis(int max_index, const QuadratureRule& rule);

  int size() const { return static_cast<int>(indices_.size()); }
  int max_index() const { return size() - 1; }
  int dimension() const { return rule_.dimension; }
  const QuadratureRule& rule() const { return rule_; }
  std::size_t n_nodes() const { return rule_.size(); }

  /// Degree pair (a, b) of phi_i.
  const std::vector<std::array<int, 2>>& multi_indices() const { return indices_; }

  /// phi_i(xi_q), shape [n_nodes x size].
  const Eigen::MatrixXd& table() const { return table_; }
  /// w_q phi_i(xi_q); moments are weighted_table^T * samples.
  const Eigen::MatrixXd& weighted_table() const { return weighted_; }
  /// Discrete brackets <phi_i> minus delta_i0, i.e. the quadrature defect.
  const Eigen::VectorXd& mean_defect() const { return mean_defect_; }

  /// phi(xi) at an arbitrary point.
  Eigen::VectorXd evaluate(const Node& xi) const;

  MomentVector moments_of(std::span<const double> samples) const;

  /// Lambda(xi_q) = sum_i lambda_i phi_i(xi_q).
  Eigen::VectorXd eval_dual_state(const MomentVector& lambda) const;

 private:
  QuadratureRule rule_;
  std::vector<std::array<int, 2>> indices_;
  Eigen::MatrixXd table_;
  Eigen::MatrixXd weighted_;
  Eigen::VectorXd mean_defect_;
};

inline PolynomialBasis build_basis(int max_index, const QuadratureRule& rule) {
  return PolynomialBasis(max_index, rule);
}

/// sqrt(2k+1) P_k(x), the Legendre polynomial normalized for density 1/2.
double normalized_legendre(int k, double x);

}  // namespace ipm
