#include "dyadic_bellman/bellman.hpp"

#include <cmath>
#include <string>

#include "dyadic_bellman/root_find.hpp"

namespace dyadic_bellman {

namespace {

void require_unit_interval(double v, const char* name, bool open_left) {
  const bool ok = open_left ? (v > 0.0 && v <= 1.0) : (v >= 0.0 && v <= 1.0);
  if (!ok) {
    throw DomainError(std::string(name) + " outside its interval: " + std::to_string(v));
  }
}

}  // namespace

double hp(double p, double z) {
  require_exponent(p, "p");
  if (!(z >= 0.0)) throw DomainError("H_p needs z >= 0");
  // -(p-1) z^p + p z^{p-1} = z^{p-1} (p - (p-1) z)
  return std::pow(z, p - 1.0) * (p - (p - 1.0) * z);
}

double omega(double p, double tau) {
  require_exponent(p, "p");
  require_unit_interval(tau, "tau", false);
  const double top = p / (p - 1.0);
  if (tau == 0.0) return top;
  if (tau == 1.0) return 1.0;
  auto g = [p](double z) { return std::pow(z, p - 1.0) * (p - (p - 1.0) * z); };
  auto dg = [p](double z) { return p * (p - 1.0) * std::pow(z, p - 2.0) * (1.0 - z); };
  return detail::solve_decreasing(g, dg, 1.0, top, tau).x;
}

double extremal_gap(double r, double alpha, double z) {
  // (1-α)^{r-1} z^r - (z-α)^r = (z-α)^r · expm1((r-1) log(1-α) - r log(1-α/z))
  const double expo = (r - 1.0) * std::log1p(-alpha) - r * std::log1p(-alpha / z);
  return std::pow(z - alpha, r) * std::expm1(expo);
}

double extremal_z(double q, double alpha, double tau) {
  require_exponent(q, "q");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  require_unit_interval(tau, "tau", true);
  if (tau == 1.0) return 1.0;

  const double target = tau * alpha * std::pow(1.0 - alpha, q - 1.0);
  auto g = [q, alpha](double z) { return extremal_gap(q, alpha, z); };
  auto dg = [q, alpha](double z) {
    const double expo = (q - 1.0) * (std::log1p(-alpha) - std::log1p(-alpha / z));
    return q * std::pow(z - alpha, q - 1.0) * std::expm1(expo);
  };
  const double hi = detail::grow_bracket(g, 1.0, target);
  return detail::solve_decreasing(g, dg, 1.0, hi, target).x;
}

double critical_f(const Exponents& exps, double f, double A) {
  if (!(f > 0.0 && std::isfinite(f) && std::isfinite(A))) {
    throw DomainError("critical surface needs finite f > 0");
  }
  const double fq = std::pow(f, exps.q());
  if (!(fq < A)) throw DomainError("critical surface needs f^q < A");

  const double w = omega(exps.q(), fq / A);
  const double top = exps.p() / (exps.p() - 1.0);
  const double h = w < top ? hp(exps.p(), w) : 0.0;
  if (!(h > 0.0)) {
    throw SurfaceError("omega_q(f^q/A) = " + std::to_string(w) + " >= p/(p-1) = " +
                       std::to_string(top) + "; no finite F on the critical surface");
  }
  return std::pow(f, exps.p()) / h;
}

double bellman_on_surface(const Exponents& exps, double f, double A) {
  const double F = critical_f(exps, f, A);
  const double w = omega(exps.q(), std::pow(f, exps.q()) / A);
  return std::pow(w, exps.p()) * F;
}

double two_var_bellman(double p, double f, double F) {
  require_exponent(p, "p");
  if (!(f > 0.0 && std::isfinite(F))) throw DomainError("two-variable Bellman needs f > 0");
  const double fp = std::pow(f, p);
  if (!(fp <= F)) throw DomainError("two-variable Bellman needs f^p <= F");
  return F * std::pow(omega(p, fp / F), p);
}

double h_fn(const Exponents& exps, double t) {
  if (!(t > 0.0)) throw DomainError("h needs t > 0");
  const double p = exps.p();
  const double q = exps.q();
  return std::pow(t, p - q) * (p - (p - q) * std::pow(t, q));
}

double h_inv(const Exponents& exps, double y) {
  const double p = exps.p();
  const double q = exps.q();
  if (!(y <= q)) throw DomainError("h^{-1} needs y <= q");
  if (y == q) return 1.0;
  auto g = [p, q](double t) { return std::pow(t, p - q) * (p - (p - q) * std::pow(t, q)); };
  auto dg = [p, q](double t) {
    return p * (p - q) * std::pow(t, p - q - 1.0) * (1.0 - std::pow(t, q));
  };
  const double hi = detail::grow_bracket(g, 1.0, y);
  return detail::solve_decreasing(g, dg, 1.0, hi, y).x;
}

double k_value(const Exponents& exps, const ConstraintTriple& t) {
  const double p = exps.p();
  const double q = exps.q();
  return (p * std::pow(t.f, p - q) * t.A - (p - q) * std::pow(t.f, p)) / t.F;
}

BoundReport upper_bound(const Exponents& exps, const ConstraintTriple& triple) {
  // Slack for triples computed from data, where f^q = A holds only up to rounding.
  constexpr double kBoundaryRelTol = 1e-12;
  if (!triple.admissible(exps, kBoundaryRelTol)) {
    throw DomainError("triple violates f^q <= A <= F^{q/p}");
  }

  BoundReport report;
  double k = k_value(exps, triple);
  if (k > exps.q() && k <= exps.q() * (1.0 + kBoundaryRelTol)) k = exps.q();
  if (!(k > 0.0 && k <= exps.q())) {
    throw InternalError("k(f,A,F) = " + std::to_string(k) + " outside (0, q]");
  }
  report.k = k;
  report.upper_bound = triple.F * std::pow(h_inv(exps, k), exps.p());

  if (triple.f > 0.0 && std::pow(triple.f, exps.q()) < triple.A) {
    try {
      const double surface_F = critical_f(exps, triple.f, triple.A);
      if (std::abs(surface_F - triple.F) <= kSurfaceRelTol * triple.F) {
        report.on_surface = true;
        report.exact_value = bellman_on_surface(exps, triple.f, triple.A);
      }
    } catch (const SurfaceError&) {
      // (f, A) has no critical F; the bound stands alone.
    }
  }
  return report;
}

}  // namespace dyadic_bellman
