#include "ipm/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ipm/errors.hpp"

namespace ipm {

double normalized_legendre(int k, double x) {
  if (k == 0) return 1.0;
  double p_prev = 1.0;
  double p = x;
  for (int j = 1; j < k; ++j) {
    const double p_next = ((2.0 * j + 1.0) * x * p - j * p_prev) / (j + 1.0);
    p_prev = p;
    p = p_next;
  }
  return std::sqrt(2.0 * k + 1.0) * p;
}

namespace {

std::vector<std::array<int, 2>> make_indices(int count, int dimension) {
  std::vector<std::array<int, 2>> out;
  if (dimension == 1) {
    for (int i = 0; i < count; ++i) out.push_back({i, 0});
    return out;
  }
  for (int total = 0; static_cast<int>(out.size()) < count; ++total) {
    for (int a = total; a >= 0 && static_cast<int>(out.size()) < count; --a) {
      out.push_back({a, total - a});
    }
  }
  return out;
}

}  // namespace

PolynomialBasis::PolynomialBasis(int max_index, const QuadratureRule& rule)
    : rule_(rule) {
  if (max_index < 0) {
    throw std::invalid_argument("basis: max index must be >= 0, got " +
                                std::to_string(max_index));
  }
  indices_ = make_indices(max_index + 1, rule_.dimension);
  const auto nq = static_cast<Eigen::Index>(rule_.size());
  const auto nb = static_cast<Eigen::Index>(indices_.size());
  table_.resize(nq, nb);
  for (Eigen::Index q = 0; q < nq; ++q) {
    table_.row(q) = evaluate(rule_.nodes[q]).transpose();
  }
  const Eigen::Map<const Eigen::VectorXd> w(rule_.weights.data(), nq);
  weighted_ = w.asDiagonal() * table_;
  mean_defect_ = weighted_.colwise().sum().transpose();
  mean_defect_(0) -= 1.0;

  const Eigen::MatrixXd gram = table_.transpose() * weighted_;
  const double deviation =
      (gram - Eigen::MatrixXd::Identity(nb, nb)).cwiseAbs().maxCoeff();
  if (deviation > 1e-8) {
    throw ConfigError("basis with " + std::to_string(nb) +
                      " functions is not orthonormal under a " + std::to_string(nq) +
                      "-node rule (Gram deviation " + std::to_string(deviation) + ")");
  }
}

Eigen::VectorXd PolynomialBasis::evaluate(const Node& xi) const {
  Eigen::VectorXd phi(size());
  for (int i = 0; i < size(); ++i) {
    const auto [a, b] = indices_[i];
    phi(i) = normalized_legendre(a, xi[0]);
    if (b > 0) phi(i) *= normalized_legendre(b, xi[1]);
  }
  return phi;
}

MomentVector PolynomialBasis::moments_of(std::span<const double> samples) const {
  if (samples.size() != n_nodes()) {
    throw std::invalid_argument("moments_of: " + std::to_string(samples.size()) +
                                " samples, basis bound to " + std::to_string(n_nodes()) +
                                " nodes");
  }
  const Eigen::Map<const Eigen::VectorXd> v(samples.data(),
                                            static_cast<Eigen::Index>(samples.size()));
  return weighted_.transpose() * v;
}

Eigen::VectorXd PolynomialBasis::eval_dual_state(const MomentVector& lambda) const {
  if (lambda.size() != size()) {
    throw std::invalid_argument("eval_dual_state: expected " + std::to_string(size()) +
                                " multipliers, got " + std::to_string(lambda.size()));
  }
  return table_ * lambda;
}

}  // namespace ipm
