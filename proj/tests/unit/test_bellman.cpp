#include <doctest.h>

#include <cmath>
#include <vector>

#include "dyadic_bellman/bellman.hpp"
#include "oracles.hpp"

using namespace dyadic_bellman;

namespace {

const Exponents e32 = Exponents::make(3.0, 2.0);

std::vector<double> tau_grid(int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(static_cast<double>(i) / (n - 1));
  return out;
}

double eq29_residual(double q, double a, double tau, double z) {
  return -std::pow(z - a, q) + std::pow(1 - a, q - 1) * std::pow(z, q) -
         tau * a * std::pow(1 - a, q - 1);
}

}  // namespace

TEST_CASE("exponents") {
  CHECK(e32.q_conj() == doctest::Approx(2.0));
  CHECK(std::abs(1 / 1.5 + 1 / Exponents::make(2, 1.5).q_conj() - 1) < 1e-15);
  CHECK_THROWS_AS(Exponents::make(2, 2), DomainError);
  CHECK_THROWS_AS(Exponents::make(2, 1), DomainError);
  CHECK_THROWS_AS(Exponents::make(65, 2), DomainError);
  CHECK_THROWS_AS(ConstraintTriple::make(e32, 1, 1, 2), DomainError);
  CHECK_THROWS_AS(ConstraintTriple::make(e32, 1, 2, 2), DomainError);
  CHECK_NOTHROW(ConstraintTriple::make(e32, 1, 1.2, 2));
}

TEST_CASE("hp examples") {
  CHECK(hp(2, 1) == 1.0);
  CHECK(std::abs(hp(3, 1.5)) < 1e-15);
  CHECK(hp(3, 1.4) == doctest::Approx(49.0 / 125).epsilon(1e-14));
  CHECK_THROWS_AS(hp(1, 1), DomainError);
  CHECK_THROWS_AS(hp(2, -0.1), DomainError);
}

TEST_CASE("omega examples") {
  CHECK(omega(2, 1) == 1.0);
  CHECK(omega(2, 0) == 2.0);
  CHECK(std::abs(omega(2, 0.5) - (1 + std::sqrt(0.5))) < 1e-15);
  CHECK(std::abs(omega(3, 0.392) - 1.4) < 1e-13);
  CHECK_THROWS_AS(omega(2, 1.5), DomainError);
  CHECK_THROWS_AS(omega(2, -0.01), DomainError);

  // mpmath, 40 digits
  CHECK(oracle::rel(omega(1.5, 0.3), 2.630025977602087680) < 1e-14);
  CHECK(oracle::rel(omega(3, 0.6), 1.330540951770293653) < 1e-14);
  CHECK(oracle::rel(omega(5, 0.1), 1.239405351803661712) < 1e-14);
  CHECK(oracle::rel(omega(2.5, 0.9), 1.223101346152855716) < 1e-14);
}

TEST_CASE("omega roundtrip, range and monotonicity") {
  const auto grid = tau_grid(10000);
  for (double p : {1.5, 2.0, 2.5, 3.0, 5.0}) {
    CAPTURE(p);
    double prev = INFINITY;
    double worst = 0;
    bool ordered = true;
    for (double t : grid) {
      const double w = omega(p, t);
      worst = std::max(worst, std::abs(hp(p, w) - t));
      if (!(w >= 1 && w <= p / (p - 1))) ordered = false;
      if (!(w < prev)) ordered = false;
      prev = w;
    }
    CHECK(worst <= 1e-12);
    CHECK(ordered);
  }
  double worst = 0;
  for (double t : grid) worst = std::max(worst, std::abs(omega(2, t) - (1 + std::sqrt(1 - t))));
  CHECK(worst <= 1e-12);
}

TEST_CASE("omega against long double bisection") {
  for (double p : {1.5, 2.5, 4.0, 7.0}) {
    for (double t : {0.01, 0.2, 0.5, 0.77, 0.999}) {
      const long double ref = oracle::bisect(
          [&](long double z) {
            return -(p - 1) * std::pow(z, (long double)p) + p * std::pow(z, (long double)p - 1) - t;
          },
          1.0L, (long double)p / (p - 1));
      CHECK(oracle::rel(omega(p, t), static_cast<double>(ref)) < 1e-13);
    }
  }
}

TEST_CASE("extremal root examples") {
  CHECK(std::abs(extremal_z(2, 0.5, 0.5) - 1.5) < 1e-14);
  CHECK(std::abs(extremal_z(2, 0.1, 0.84) - (1 + std::sqrt(0.9 * 0.16))) < 1e-14);
  CHECK(extremal_z(2, 0.3, 1.0) == 1.0);
  CHECK(oracle::rel(extremal_z(1.5, 0.25, 0.3), 2.413152776824495311) < 1e-13);
  CHECK(oracle::rel(extremal_z(3, 0.125, 0.6), 1.309135685702380174) < 1e-13);
  CHECK(oracle::rel(extremal_z(5, 0.5, 0.1), 1.167337063568505496) < 1e-13);
  CHECK_THROWS_AS(extremal_z(2, 0, 0.5), DomainError);
  CHECK_THROWS_AS(extremal_z(2, 1, 0.5), DomainError);
  CHECK_THROWS_AS(extremal_z(2, 0.5, 0), DomainError);
  CHECK_THROWS_AS(extremal_z(2, 0.5, 1.1), DomainError);
}

TEST_CASE("extremal root residual and q=2 closed form") {
  double worst_res = 0, worst_cf = 0;
  for (double q : {1.25, 1.5, 2.0, 3.0, 5.0}) {
    for (int i = 1; i < 20; ++i) {
      const double a = i / 20.0;
      for (int j = 1; j <= 20; ++j) {
        const double t = j / 20.0;
        const double z = extremal_z(q, a, t);
        CHECK(z >= 1.0);
        worst_res = std::max(worst_res, std::abs(eq29_residual(q, a, t, z)));
        if (q == 2.0) worst_cf = std::max(worst_cf, std::abs(z - (1 + std::sqrt((1 - a) * (1 - t)))));
      }
    }
  }
  CHECK(worst_res <= 1e-13);
  CHECK(worst_cf <= 1e-12);
}

TEST_CASE("extremal root tends to omega") {
  for (double q : {1.5, 2.0, 3.0}) {
    for (double t : {0.1, 0.5, 0.9}) {
      CAPTURE(q);
      CAPTURE(t);
      double prev = INFINITY;
      bool monotone = true;
      double last = 0;
      for (int e = 1; e <= 20; ++e) {
        const double d = std::abs(extremal_z(q, std::ldexp(1.0, -e), t) - omega(q, t));
        if (!(d < prev)) monotone = false;
        prev = d;
        last = d;
      }
      CHECK(monotone);
      CHECK(last <= 1e-5);
    }
  }
}

TEST_CASE("critical surface examples") {
  CHECK(oracle::rel(critical_f(e32, 1, 25.0 / 21), 125.0 / 49) < 1e-13);
  CHECK(std::abs(bellman_on_surface(e32, 1, 25.0 / 21) - 7) < 1e-12);
  CHECK(oracle::rel(bellman_on_surface(e32, 2, 4 * 25.0 / 21), 56) < 1e-12);
  CHECK_THROWS_AS(critical_f(Exponents::make(2, 1.5), 1, 1), DomainError);
  CHECK_THROWS_AS(critical_f(e32, 1, 2), SurfaceError);
  CHECK_THROWS_AS(bellman_on_surface(e32, 1, 2), SurfaceError);

  const Exponents e = Exponents::make(2, 1.5);
  CHECK(std::abs(bellman_on_surface(e, 1, 1 + 1e-12) - 1) < 1e-5);
  CHECK(std::abs(bellman_on_surface(e, 1, 1 + 1e-8) - 1) < 1e-3);
}

TEST_CASE("two-variable Bellman") {
  CHECK(std::abs(two_var_bellman(3, 1, 125.0 / 49) - 7) < 1e-12);
  CHECK(two_var_bellman(2, 1, 1) == 1.0);
  CHECK(oracle::rel(two_var_bellman(2, 1, 4), 4 * std::pow(1 + std::sqrt(0.75), 2)) < 1e-14);
  CHECK_THROWS_AS(two_var_bellman(2, 2, 3), DomainError);
}

TEST_CASE("surface consistency and homogeneity") {
  for (auto [p, q] : std::vector<std::pair<double, double>>{{3, 2}, {2, 1.5}, {4, 2}, {5, 3}}) {
    const Exponents e = Exponents::make(p, q);
    for (double f : {0.3, 1.0, 2.5}) {
      for (int i = 1; i <= 30; ++i) {
        // τ = f^q/A in (τ_min, 1), τ_min the surface edge
        const double tau = 1 - i / 31.0 * (1 - hp(q, p / (p - 1)));
        const double A = std::pow(f, q) / tau;
        double F;
        try {
          F = critical_f(e, f, A);
        } catch (const SurfaceError&) {
          continue;
        }
        const double b = bellman_on_surface(e, f, A);
        CHECK(oracle::rel(b, two_var_bellman(p, f, F)) <= 1e-12);
        const double c = 1.7;
        CHECK(oracle::rel(bellman_on_surface(e, c * f, std::pow(c, q) * A), std::pow(c, p) * b) <=
              1e-12);
        const BoundReport r = upper_bound(e, ConstraintTriple{f, A, F});
        CHECK(r.on_surface);
        REQUIRE(r.exact_value.has_value());
        CHECK(r.upper_bound >= *r.exact_value * (1 - 1e-12));
      }
    }
  }
}

TEST_CASE("h and its inverse") {
  CHECK(h_fn(e32, 1) == 2.0);
  CHECK(std::abs(h_fn(e32, std::sqrt(3.0))) < 1e-14);
  CHECK(h_fn(e32, 2) == -2.0);
  CHECK_THROWS_AS(h_fn(e32, 0), DomainError);
  CHECK(h_inv(e32, 2) == 1.0);
  CHECK(std::abs(h_inv(e32, 0) - std::sqrt(3.0)) < 1e-14);
  CHECK(oracle::rel(h_inv(e32, 1.008), 1.530105140641467824) < 1e-13);
  CHECK(oracle::rel(h_inv(e32, 1.25), 1.465226874818956685) < 1e-13);
  CHECK_THROWS_AS(h_inv(e32, 2.01), DomainError);

  for (auto [p, q] : std::vector<std::pair<double, double>>{{3, 2}, {2, 1.5}, {5, 3}, {8, 1.2}}) {
    const Exponents e = Exponents::make(p, q);
    double worst = 0;
    for (int i = 0; i <= 1000; ++i) {
      const double y = std::min(q, -100 + (q + 100) * i / 1000.0);
      const double t = h_inv(e, y);
      CHECK(t >= 1.0);
      worst = std::max(worst, std::abs(h_fn(e, t) - y));
    }
    CAPTURE(p);
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("h inverse against long double bisection") {
  const long double ref =
      oracle::bisect([](long double t) { return t * t * t - 3 * t + 1.008L; }, 1.0L, 3.0L);
  CHECK(oracle::rel(h_inv(e32, 1.008), static_cast<double>(ref)) < 1e-14);
}

TEST_CASE("upper bound examples") {
  const BoundReport r = upper_bound(e32, ConstraintTriple{1, 25.0 / 21, 125.0 / 49});
  CHECK(oracle::rel(r.k, 1.008) < 1e-13);
  CHECK(oracle::rel(r.upper_bound, 9.138559749807151715) < 1e-12);
  CHECK(r.on_surface);
  REQUIRE(r.exact_value);
  CHECK(std::abs(*r.exact_value - 7) < 1e-12);
  CHECK(r.upper_bound >= 7);

  const BoundReport s = upper_bound(Exponents::make(2, 1.5), ConstraintTriple{1, 1.2, 1.5});
  CHECK(oracle::rel(s.k, 19.0 / 15) < 1e-14);
  CHECK(oracle::rel(s.upper_bound, 3.739124564756147668) < 1e-12);
  CHECK_FALSE(s.on_surface);
  CHECK_FALSE(s.exact_value);

  // k -> q at the boundary where A -> f^q and F -> A^{p/q}. h is flat at
  // t = 1, so the bound approaches F like the square root of the offset.
  double prev_gap = INFINITY;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double A = 1 + eps;
    const double F = std::pow(A, 1.5) * (1 + eps);
    const BoundReport b = upper_bound(e32, ConstraintTriple{1, A, F});
    CHECK(b.k <= 2.0);
    const double gap = b.upper_bound - F;
    CHECK(gap >= 0);
    CHECK(gap < 3 * std::sqrt(eps));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  const BoundReport c = upper_bound(e32, ConstraintTriple{2, 4, 8});
  CHECK(c.k == 2.0);
  CHECK(c.upper_bound == 8.0);

  CHECK_THROWS_AS(upper_bound(e32, ConstraintTriple{1, 0.5, 2}), DomainError);
  CHECK_THROWS_AS(upper_bound(e32, ConstraintTriple{1, 2, 2}), DomainError);
}
