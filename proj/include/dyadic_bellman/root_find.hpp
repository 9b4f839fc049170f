#pragma once

// Bracketed root finding for strictly decreasing functions: bisection with
// safeguarded Newton steps. Used for ω_p, the extremal z(α, τ) and h^{-1}.

#include <cmath>
#include <limits>

#include "dyadic_bellman/errors.hpp"

namespace dyadic_bellman::detail {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  // g(x) - target
  int iterations = 0;
};

/// Solves g(x) = target for g strictly decreasing on [lo, hi] with
/// g(lo) >= target >= g(hi). `dg` is the derivative. Iterates until the
/// bracket collapses to adjacent doubles or the residual vanishes, and
/// returns the iterate with the smaller |residual|.
template <class G, class DG>
RootResult solve_decreasing(G&& g, DG&& dg, double lo, double hi, double target) {
  constexpr int kMaxIterations = 3000;
  double r_lo = g(lo) - target;
  double r_hi = g(hi) - target;
  if (r_lo == 0.0) return {lo, 0.0, 0};
  if (r_hi == 0.0) return {hi, 0.0, 0};
  if (!(r_lo > 0.0 && r_hi < 0.0)) {
    throw ConvergenceError("root not bracketed");
  }

  double x = 0.5 * (lo + hi);
  int it = 1;
  for (; it <= kMaxIterations; ++it) {
    const double r = g(x) - target;
    if (r == 0.0) return {x, 0.0, it};
    if (r > 0.0) {
      lo = x;
      r_lo = r;
    } else {
      hi = x;
      r_hi = r;
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket is two adjacent doubles

    double next = mid;
    // Every third step is a plain bisection so one-sided Newton sequences
    // still shrink the bracket.
    if (it % 3 != 0) {
      const double d = dg(x);
      if (d < 0.0 && std::isfinite(d)) {
        const double step = r / d;
        // Correction below the resolution of x: x is the root to double
        // precision, up to one neighbour.
        if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
          const double other = x - step;
          const double r_other = other == x ? r : g(other) - target;
          return std::abs(r_other) < std::abs(r) ? RootResult{other, r_other, it}
                                                 : RootResult{x, r, it};
        }
        const double newton = x - step;
        if (newton > lo && newton < hi) next = newton;
      }
    }
    x = next;
  }
  if (it > kMaxIterations) throw ConvergenceError("root finder did not converge");
  return std::abs(r_lo) <= std::abs(r_hi) ? RootResult{lo, r_lo, it}
                                          : RootResult{hi, r_hi, it};
}

/// Doubles `hi` (starting at 2*lo, lo >= 1) until g(hi) < target.
template <class G>
double grow_bracket(G&& g, double lo, double target) {
  double hi = 2.0 * lo;
  for (int i = 0; i < 1100; ++i) {
    const double v = g(hi);
    if (std::isnan(v)) break;
    if (v < target) return hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) break;
  }
  throw ConvergenceError("could not bracket root");
}

}  // namespace dyadic_bellman::detail
