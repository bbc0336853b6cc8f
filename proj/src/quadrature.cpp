#include "ipm/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ipm {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p_prev = 1.0;
  double p = x;
  for (int k = 1; k < n; ++k) {
    const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    p_prev = p;
    p = p_next;
  }
  const double dp = n * (x * p - p_prev) / (x * x - 1.0);
  return {p, dp};
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: need at least one point, got " +
                                std::to_string(n));
  }
  QuadratureRule rule;
  rule.dimension = 1;
  rule.nodes.assign(n, Node{0.0, 0.0});
  rule.weights.assign(n, 0.0);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi-style asymptotic guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = legendre_with_derivative(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    dp = legendre_with_derivative(n, x).second;
    if (n % 2 == 1 && i == half - 1) {
      x = 0.0;
      dp = legendre_with_derivative(n, x).second;
    }
    // Standard weight 2 / ((1-x^2) P'^2), times the density 1/2.
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i][0] = x;
    rule.nodes[i][0] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureRule clenshaw_curtis_tensor(int level, int dimension) {
  if (level < 1) {
    throw std::invalid_argument("clenshaw_curtis_tensor: level must be >= 1");
  }
  if (dimension != 1 && dimension != 2) {
    throw std::invalid_argument("clenshaw_curtis_tensor: unsupported dimension " +
                                std::to_string(dimension));
  }
  const int intervals = 1 << level;
  const int n = intervals + 1;

  std::vector<double> x(n), w(n);
  for (int j = 0; j < n; ++j) {
    x[j] = -std::cos(std::numbers::pi * j / intervals);
    const double c = (j == 0 || j == intervals) ? 1.0 : 2.0;
    double sum = 0.0;
    for (int k = 1; k <= intervals / 2; ++k) {
      const double b = (2 * k == intervals) ? 1.0 : 2.0;
      sum += b / (4.0 * k * k - 1.0) * std::cos(2.0 * k * j * std::numbers::pi / intervals);
    }
    // Weights for dxi on [-1,1] sum to 2; fold in the density 1/2.
    w[j] = 0.5 * c / intervals * (1.0 - sum);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  QuadratureRule rule;
  rule.dimension = dimension;
  if (dimension == 1) {
    for (int j = 0; j < n; ++j) {
      rule.nodes.push_back(Node{x[j], 0.0});
      rule.weights.push_back(w[j]);
    }
    return rule;
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      rule.nodes.push_back(Node{x[i], x[k]});
      rule.weights.push_back(w[i] * w[k]);
    }
  }
  return rule;
}

double bracket(const QuadratureRule& rule, std::span<const double> samples) {
  if (samples.size() != rule.size()) {
    throw std::invalid_argument("bracket: " + std::to_string(samples.size()) +
                                " samples for a rule with " + std::to_string(rule.size()) +
                                " nodes");
  }
  double sum = 0.0;
  for (std::size_t q = 0; q < samples.size(); ++q) sum += rule.weights[q] * samples[q];
  return sum;
}

}  // namespace ipm
