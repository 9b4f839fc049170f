#pragma once

#include "dyadic_bellman/errors.hpp"

namespace dyadic_bellman {

/// Largest exponent accepted anywhere; z^p overflows double well before
/// the bracket limits are reached beyond this.
inline constexpr double kMaxExponent = 64.0;

/// The exponent pair 1 < q < p together with the conjugate of q.
class Exponents {
 public:
  /// Throws DomainError unless 1 < q < p <= kMaxExponent.
  static Exponents make(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  /// q' with 1/q + 1/q' = 1.
  double q_conj() const noexcept { return q_conj_; }

  friend bool operator==(const Exponents&, const Exponents&) = default;

 private:
  Exponents(double p, double q, double q_conj) : p_(p), q_(q), q_conj_(q_conj) {}

  double p_;
  double q_;
  double q_conj_;
};

/// Validates a single exponent: 1 < r <= kMaxExponent.
void require_exponent(double r, const char* name);

/// The integral variables (f, A, F) = (∫φ, ∫φ^q, ∫φ^p).
struct ConstraintTriple {
  double f = 0.0;
  double A = 0.0;
  double F = 0.0;

  /// Strict domain: f >= 0, f^q < A < F^{q/p}. Throws DomainError otherwise.
  static ConstraintTriple make(const Exponents& exps, double f, double A, double F);

  /// Closed domain f^q <= A <= F^{q/p}, with relative slack `rel_tol` on
  /// each inequality. Every nonnegative φ satisfies this (Jensen/Hölder),
  /// constants sitting on the boundary.
  bool admissible(const Exponents& exps, double rel_tol) const noexcept;
};

}  // namespace dyadic_bellman
