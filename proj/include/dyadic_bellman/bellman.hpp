#pragma once

// Closed-form and root-defined functions behind the three-variable Bellman
// function of the tree maximal operator: H_p and its inverse ω_p, the
// extremal parameter z(α, τ), the critical surface F(f, A), the exact value
// on that surface, and the general upper bound F·h^{-1}(k)^p.
//
// All functions are pure; they throw DomainError / SurfaceError /
// ConvergenceError / InternalError from errors.hpp.

#include <optional>

#include "dyadic_bellman/errors.hpp"
#include "dyadic_bellman/exponents.hpp"

namespace dyadic_bellman {

/// H_p(z) = -(p-1) z^p + p z^{p-1}.
double hp(double p, double z);

/// ω_p(τ) = H_p^{-1}(τ) on the branch [1, p/(p-1)]. Decreasing in τ;
/// ω_p(0) = p/(p-1) and ω_p(1) = 1 are returned exactly.
double omega(double p, double tau);

/// (1-α)^{r-1} z^r - (z-α)^r, evaluated without the cancellation the
/// naive form suffers for small α. Shared denominator of the extremal
/// norms.
double extremal_gap(double r, double alpha, double z);

/// The unique z >= 1 with -(z-α)^q + (1-α)^{q-1} z^q = τ α (1-α)^{q-1}.
/// Tends to ω_q(τ) as α -> 0+.
double extremal_z(double q, double alpha, double tau);

/// F(f, A) = f^p / H_p(ω_q(f^q / A)): the L^p integral that puts (f, A, F)
/// on the critical surface ω_p(f^p/F) = ω_q(f^q/A).
/// Throws DomainError unless 0 < f^q < A, SurfaceError when
/// ω_q(f^q/A) >= p/(p-1).
double critical_f(const Exponents& exps, double f, double A);

/// Exact Bellman value on the critical surface: ω_q(f^q/A)^p · F(f, A).
double bellman_on_surface(const Exponents& exps, double f, double A);

/// Two-variable Bellman function F · ω_p(f^p/F)^p, for 0 < f^p <= F.
double two_var_bellman(double p, double f, double F);

/// h(t) = p t^{p-q} - (p-q) t^p, t > 0.
double h_fn(const Exponents& exps, double t);

/// Inverse of h on its decreasing branch [1, ∞); y <= q.
double h_inv(const Exponents& exps, double y);

/// k(f, A, F) = (p f^{p-q} A - (p-q) f^p) / F.
double k_value(const Exponents& exps, const ConstraintTriple& triple);

struct BoundReport {
  std::optional<double> exact_value;            // Bellman value when on surface
  double upper_bound = 0.0;                     // F · h^{-1}(k)^p
  std::optional<double> lower_bound_empirical;  // filled by callers with a witness
  double k = 0.0;
  bool on_surface = false;
};

/// Relative tolerance for deciding that a triple lies on the critical surface.
inline constexpr double kSurfaceRelTol = 1e-9;

/// Upper bound for ∫(Mφ)^p over φ with the given (f, A, F). Accepts the
/// closed domain f^q <= A <= F^{q/p} (constants sit on its boundary, where
/// k = q and the bound is F). Throws DomainError outside it and
/// InternalError if k falls outside (0, q].
BoundReport upper_bound(const Exponents& exps, const ConstraintTriple& triple);

}  // namespace dyadic_bellman
