#include "ipm/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ipm/errors.hpp"

namespace ipm {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Keeps an ansatz strictly inside the bounds after rounding.
Ansatz settle(Ansatz a, double lo, double hi) {
  if (a.value >= hi) a.value = std::nextafter(hi, lo);
  if (a.value <= lo) a.value = std::nextafter(lo, hi);
  if (!(a.above_lower > 0.0)) a.above_lower = a.value - lo;
  if (!(a.below_upper > 0.0)) a.below_upper = hi - a.value;
  return a;
}

}  // namespace

std::string to_string(EntropyKind kind) {
  switch (kind) {
    case EntropyKind::LogBarrier: return "log_barrier";
    case EntropyKind::BoundedBarrier: return "bounded_barrier";
    case EntropyKind::Quadratic: return "quadratic";
    case EntropyKind::Power: return "power";
  }
  return "unknown";
}

EntropyKind parse_entropy_kind(std::string_view name) {
  if (name == "log_barrier") return EntropyKind::LogBarrier;
  if (name == "bounded_barrier") return EntropyKind::BoundedBarrier;
  if (name == "quadratic") return EntropyKind::Quadratic;
  if (name == "power") return EntropyKind::Power;
  throw ConfigError("unknown entropy kind '" + std::string(name) + "'");
}

Entropy::Entropy(EntropyKind kind, double u_minus, double u_plus, int power)
    : kind_(kind), u_minus_(u_minus), u_plus_(u_plus), power_(power) {
  if (!(u_minus < u_plus)) {
    throw std::invalid_argument("entropy: need u_minus < u_plus");
  }
}

Entropy Entropy::log_barrier(double u_minus, double u_plus) {
  return Entropy(EntropyKind::LogBarrier, u_minus, u_plus, 1);
}

Entropy Entropy::bounded_barrier(double u_minus, double u_plus) {
  return Entropy(EntropyKind::BoundedBarrier, u_minus, u_plus, 1);
}

Entropy Entropy::quadratic(double u_minus, double u_plus) {
  return Entropy(EntropyKind::Quadratic, u_minus, u_plus, 1);
}

Entropy Entropy::power_family(const Entropy& base, int k) {
  if (k < 1) throw std::invalid_argument("power_family: k must be >= 1");
  if (base.kind() != EntropyKind::BoundedBarrier) {
    throw std::invalid_argument("power_family: base entropy must be bounded_barrier");
  }
  Entropy e(EntropyKind::Power, base.u_minus(), base.u_plus(), k);
  e.power_scale_ = (base.u_plus() - base.u_minus()) * std::log(2.0);
  return e;
}

void Entropy::require_open(double u, const char* what) const {
  if (bounded() && !(u > u_minus_ && u < u_plus_)) {
    throw DomainError(std::string(what) + ": u = " + std::to_string(u) +
                      " outside the open interval (" + std::to_string(u_minus_) + ", " +
                      std::to_string(u_plus_) + ")");
  }
}

void Entropy::require_closed(double u, const char* what) const {
  if (bounded() && !(u >= u_minus_ && u <= u_plus_)) {
    throw DomainError(std::string(what) + ": u = " + std::to_string(u) +
                      " outside [" + std::to_string(u_minus_) + ", " +
                      std::to_string(u_plus_) + "]");
  }
}

double Entropy::bb_s(double u) const { return xlogx(u - u_minus_) + xlogx(u_plus_ - u); }

double Entropy::bb_s_prime(double u) const {
  return std::log(u - u_minus_) - std::log(u_plus_ - u);
}

double Entropy::bb_s_double_prime(double u) const {
  return 1.0 / (u - u_minus_) + 1.0 / (u_plus_ - u);
}

Ansatz Entropy::bb_ansatz(double dual) const {
  const double width = u_plus_ - u_minus_;
  double p, one_minus_p;
  if (dual >= 0.0) {
    const double e = std::exp(-dual);
    p = 1.0 / (1.0 + e);
    one_minus_p = e / (1.0 + e);
  } else {
    const double e = std::exp(dual);
    p = e / (1.0 + e);
    one_minus_p = 1.0 / (1.0 + e);
  }
  Ansatz a;
  a.above_lower = width * p;
  a.below_upper = width * one_minus_p;
  a.value = dual >= 0.0 ? u_plus_ - a.below_upper : u_minus_ + a.above_lower;
  return settle(a, u_minus_, u_plus_);
}

double Entropy::power_q(double u) const {
  const double mid = 0.5 * (u_minus_ + u_plus_);
  return (bb_s(u) - bb_s(mid)) / power_scale_;
}

// Base dual t with s_k'(u_bb(t)) = dual; s_k' is odd and increasing in t.
double Entropy::power_base_dual(double dual) const {
  if (power_ == 1) return power_scale_ * dual;
  if (dual == 0.0) return 0.0;
  const double target = std::abs(dual);
  const auto g = [&](double t) {
    const double q = power_q(bb_ansatz(t).value);
    return power_ * std::pow(q, power_ - 1) * t / power_scale_;
  };
  // q <= 1 gives g(t) <= k t / D, so the root is above D |dual| / k.
  double lo = power_scale_ * target / power_;
  double hi = lo;
  for (int i = 0; i < 2000 && g(hi) < target; ++i) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 4e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return std::copysign(0.5 * (lo + hi), dual);
}

double Entropy::s(double u) const {
  switch (kind_) {
    case EntropyKind::LogBarrier:
      require_open(u, "log_barrier s");
      return -std::log(u - u_minus_) - std::log(u_plus_ - u);
    case EntropyKind::BoundedBarrier:
      require_closed(u, "bounded_barrier s");
      return bb_s(u);
    case EntropyKind::Quadratic:
      return 0.5 * u * u;
    case EntropyKind::Power:
      require_closed(u, "power s");
      return std::pow(power_q(u), power_);
  }
  return 0.0;
}

double Entropy::s_prime(double u) const {
  switch (kind_) {
    case EntropyKind::LogBarrier:
      require_open(u, "log_barrier s'");
      return -1.0 / (u - u_minus_) + 1.0 / (u_plus_ - u);
    case EntropyKind::BoundedBarrier:
      require_open(u, "bounded_barrier s'");
      return bb_s_prime(u);
    case EntropyKind::Quadratic:
      return u;
    case EntropyKind::Power:
      require_open(u, "power s'");
      return power_ * std::pow(power_q(u), power_ - 1) * bb_s_prime(u) / power_scale_;
  }
  return 0.0;
}

double Entropy::s_double_prime(double u) const {
  switch (kind_) {
    case EntropyKind::LogBarrier: {
      require_open(u, "log_barrier s''");
      const double a = u - u_minus_;
      const double b = u_plus_ - u;
      return 1.0 / (a * a) + 1.0 / (b * b);
    }
    case EntropyKind::BoundedBarrier:
      require_open(u, "bounded_barrier s''");
      return bb_s_double_prime(u);
    case EntropyKind::Quadratic:
      return 1.0;
    case EntropyKind::Power: {
      require_open(u, "power s''");
      const double q = power_q(u);
      const double ds = bb_s_prime(u) / power_scale_;
      double value = power_ * std::pow(q, power_ - 1) * bb_s_double_prime(u) / power_scale_;
      if (power_ > 1) value += power_ * (power_ - 1) * std::pow(q, power_ - 2) * ds * ds;
      return value;
    }
  }
  return 0.0;
}

Ansatz Entropy::ansatz(double dual) const {
  switch (kind_) {
    case EntropyKind::LogBarrier: {
      const double half = 0.5 * (u_plus_ - u_minus_);
      const double c = dual * half;
      const double r = std::hypot(1.0, c);
      const double y = c / (1.0 + r);
      double one_plus_y, one_minus_y;
      if (c >= 0.0) {
        one_minus_y = (1.0 + 1.0 / (r + c)) / (1.0 + r);
        one_plus_y = 1.0 + y;
      } else {
        one_plus_y = (1.0 + 1.0 / (r - c)) / (1.0 + r);
        one_minus_y = 1.0 - y;
      }
      Ansatz a;
      a.above_lower = half * one_plus_y;
      a.below_upper = half * one_minus_y;
      a.value = y >= 0.0 ? u_plus_ - a.below_upper : u_minus_ + a.above_lower;
      return settle(a, u_minus_, u_plus_);
    }
    case EntropyKind::BoundedBarrier:
      return bb_ansatz(dual);
    case EntropyKind::Quadratic: {
      constexpr double inf = std::numeric_limits<double>::infinity();
      return Ansatz{dual, inf, inf};
    }
    case EntropyKind::Power:
      return bb_ansatz(power_base_dual(dual));
  }
  return Ansatz{0.0, 0.0, 0.0};
}

double Entropy::u_me_derivative(double dual) const {
  return u_me_derivative(ansatz(dual));
}

double Entropy::u_me_derivative(const Ansatz& a) const {
  switch (kind_) {
    case EntropyKind::LogBarrier: {
      const double lo = std::min(a.above_lower, a.below_upper);
      const double hi = std::max(a.above_lower, a.below_upper);
      const double ratio = lo / hi;
      return lo * lo / (1.0 + ratio * ratio);
    }
    case EntropyKind::BoundedBarrier:
      return a.above_lower * a.below_upper / (u_plus_ - u_minus_);
    case EntropyKind::Quadratic:
      return 1.0;
    case EntropyKind::Power:
      return 1.0 / s_double_prime(a.value);
  }
  return 0.0;
}

double Entropy::legendre_dual(double dual) const {
  switch (kind_) {
    case EntropyKind::LogBarrier: {
      const Ansatz a = ansatz(dual);
      return dual * a.value + std::log(a.above_lower) + std::log(a.below_upper);
    }
    case EntropyKind::BoundedBarrier: {
      const double width = u_plus_ - u_minus_;
      return dual * u_minus_ - width * std::log(width) + width * softplus(dual);
    }
    case EntropyKind::Quadratic:
      return 0.5 * dual * dual;
    case EntropyKind::Power: {
      const double u = ansatz(dual).value;
      return dual * u - s(u);
    }
  }
  return 0.0;
}

double curvature_ratio(const Entropy& entropy, double exact_dual, double approx_dual) {
  const double exact = entropy.u_me_derivative(exact_dual);
  const double approx = entropy.u_me_derivative(approx_dual);
  if (exact == approx) return 1.0;
  if (!(exact > 0.0)) return std::numeric_limits<double>::infinity();
  return approx / exact;
}

}  // namespace ipm
