#include "dyadic_bellman/exponents.hpp"

#include <cmath>
#include <string>

namespace dyadic_bellman {

void require_exponent(double r, const char* name) {
  if (!(r > 1.0 && r <= kMaxExponent)) {
    throw DomainError(std::string("exponent ") + name + " must lie in (1, 64], got " +
                      std::to_string(r));
  }
}

Exponents Exponents::make(double p, double q) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  if (!(q < p)) {
    throw DomainError("exponents must satisfy 1 < q < p");
  }
  return Exponents(p, q, q / (q - 1.0));
}

ConstraintTriple ConstraintTriple::make(const Exponents& exps, double f, double A, double F) {
  if (!(f >= 0.0 && std::isfinite(f) && std::isfinite(A) && std::isfinite(F))) {
    throw DomainError("triple requires finite f >= 0, A, F");
  }
  if (!(A > 0.0 && F > 0.0)) throw DomainError("triple requires A > 0 and F > 0");
  if (!(std::pow(f, exps.q()) < A)) throw DomainError("triple requires f^q < A");
  if (!(A < std::pow(F, exps.q() / exps.p()))) throw DomainError("triple requires A < F^{q/p}");
  return ConstraintTriple{f, A, F};
}

bool ConstraintTriple::admissible(const Exponents& exps, double rel_tol) const noexcept {
  if (!(f >= 0.0 && A > 0.0 && F > 0.0)) return false;
  if (!(std::isfinite(f) && std::isfinite(A) && std::isfinite(F))) return false;
  const double fq = std::pow(f, exps.q());
  const double f_cap = std::pow(F, exps.q() / exps.p());
  return fq <= A * (1.0 + rel_tol) && A <= f_cap * (1.0 + rel_tol);
}

}  // namespace dyadic_bellman
