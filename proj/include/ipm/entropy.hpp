#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace ipm {

enum class EntropyKind { LogBarrier, BoundedBarrier, Quadratic, Power };

std::string to_string(EntropyKind kind);
/// Accepts log_barrier, bounded_barrier, quadratic, power. Throws ConfigError.
EntropyKind parse_entropy_kind(std::string_view name);

/// An ansatz value u_ME(Lambda) together with its distances to both bounds.
/// The distances are computed directly, so they keep full relative accuracy
/// even when the value itself rounds to a bound.
struct Ansatz {
  double value;
  double above_lower;  // u - u_minus
  double below_upper;  // u_plus - u
};

/// Strictly convex entropy density on (u_minus, u_plus).
///
/// For the barrier entropies s' maps the open interval onto the real line,
/// so u_me = (s')^{-1} is total and always lands strictly inside the bounds.
/// The quadratic entropy reproduces the stochastic-Galerkin closure; its
/// bounds only serve as the wave-speed range for the CFL condition.
class Entropy {
 public:
  static Entropy log_barrier(double u_minus, double u_plus);
  static Entropy bounded_barrier(double u_minus, double u_plus);
  static Entropy quadratic(double u_minus = -std::numeric_limits<double>::infinity(),
                           double u_plus = std::numeric_limits<double>::infinity());
  /// s_k = ((s - s(u_mid)) / (s(u_plus) - s(u_mid)))^k over a bounded-barrier
  /// base. Throws std::invalid_argument for k < 1 or a non-BB base.
  static Entropy power_family(const Entropy& base, int k);

  EntropyKind kind() const { return kind_; }
  double u_minus() const { return u_minus_; }
  double u_plus() const { return u_plus_; }
  int power() const { return power_; }
  bool bounded() const { return kind_ != EntropyKind::Quadratic; }

  double s(double u) const;
  double s_prime(double u) const;
  double s_double_prime(double u) const;

  /// (s')^{-1}(dual).
  double u_me(double dual) const { return ansatz(dual).value; }
  Ansatz ansatz(double dual) const;
  /// d u_me / d Lambda = 1 / s''(u_me(Lambda)).
  double u_me_derivative(double dual) const;
  /// Same, reusing an ansatz already computed for this dual state.
  double u_me_derivative(const Ansatz& a) const;
  /// Legendre transform s_*(Lambda) = Lambda u_me(Lambda) - s(u_me(Lambda)).
  double legendre_dual(double dual) const;

 private:
  Entropy(EntropyKind kind, double u_minus, double u_plus, int power);

  void require_open(double u, const char* what) const;
  void require_closed(double u, const char* what) const;

  // bounded-barrier pieces shared with the power family
  double bb_s(double u) const;
  double bb_s_prime(double u) const;
  double bb_s_double_prime(double u) const;
  Ansatz bb_ansatz(double dual) const;
  double power_q(double u) const;
  double power_base_dual(double dual) const;

  EntropyKind kind_;
  double u_minus_;
  double u_plus_;
  int power_;
  double power_scale_ = 1.0;  // s(u_plus) - s(u_mid) of the BB base
};

/// s''(u_me(exact)) / s''(u_me(approx)), the quantity bounded by gamma in the
/// modified CFL condition. s'' is read as composed with the ansatz map; this
/// is the only place that interpretation lives.
double curvature_ratio(const Entropy& entropy, double exact_dual, double approx_dual);

}  // namespace ipm
