#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ipm {

/// A point of the random domain [-1,1]^d. One-dimensional rules leave the
/// second coordinate at zero.
using Node = std::array<double, 2>;

/// Nodes and weights realizing the bracket <g> = int g(xi) f(xi) dxi for a
/// uniform density on [-1,1]^d. The density is folded into the weights, so
/// they sum to one and <g> is a plain weighted sum.
struct QuadratureRule {
  int dimension = 1;
  std::vector<Node> nodes;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree <= 2n-1.
/// Throws std::invalid_argument for n < 1.
QuadratureRule gauss_legendre(int n);

/// Clenshaw-Curtis rule on the 2^level+1 Chebyshev extrema, tensorized
/// for dimension 2 (node index q = i * n1d + k, with xi_0 from i).
/// Throws std::invalid_argument for level < 1 or dimension not in {1, 2}.
QuadratureRule clenshaw_curtis_tensor(int level, int dimension);

/// Sum_q w_q samples_q. Throws std::invalid_argument on length mismatch.
double bracket(const QuadratureRule& rule, std::span<const double> samples);

}  // namespace ipm
