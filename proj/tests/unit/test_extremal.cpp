#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dyadic_bellman/bellman.hpp"
#include "dyadic_bellman/extremal.hpp"
#include "oracles.hpp"

using namespace dyadic_bellman;

namespace {

const Exponents e32 = Exponents::make(3.0, 2.0);
constexpr double kA = 25.0 / 21.0;

MAdicRational dyadic(std::uint64_t j, unsigned k) { return MAdicRational(j, k, 2); }

}  // namespace

TEST_CASE("family S for alpha = 1/2") {
  const MAdicTree tree(2, 3);
  const Construction c = build_s(tree, dyadic(1, 1), 2);
  REQUIRE(c.members().size() == 3);
  CHECK(c.step() == 1);
  for (unsigned r = 0; r <= 2; ++r) {
    const auto band = c.members_of_rank(r);
    REQUIRE(band.size() == 1);
    CHECK(band[0].node == NodeAddress{r, 0});
    CHECK(band[0].residual == tree.leaves_of({r + 1, 1}));
    CHECK(c.residual_measure(band[0]) == c.tree().node_measure(r + 1));
  }
}

TEST_CASE("family S for alpha = 1/4") {
  const MAdicTree tree(2, 4);
  const Construction c = build_s(tree, dyadic(1, 2), 1);
  const auto root = c.members_of_rank(0);
  REQUIRE(root.size() == 1);
  CHECK(c.residual_measure(root[0]) == dyadic(1, 2));
  CHECK(c.family_measure(root[0]) == dyadic(3, 2));
  CHECK(root[0].residual == LeafRange{12, 16});
  CHECK(c.members_of_rank(1).size() == 3);
}

TEST_CASE("family S for alpha = 1/8 keeps exact measures") {
  const MAdicTree tree(2, 15);
  const Construction c = build_s(tree, dyadic(1, 3), 4);
  MAdicRational expected = dyadic(1, 0);
  for (unsigned r = 0; r <= 4; ++r) {
    MAdicRational band = dyadic(0, 0);
    for (const Member& member : c.members_of_rank(r)) {
      band = band + tree.node_measure(member.node.level);
      CHECK(c.residual_measure(member) == dyadic(1, 3) * tree.node_measure(member.node.level));
    }
    CHECK(band == expected);  // (7/8)^r
    expected = expected * dyadic(7, 3);
  }
  const Member& root = c.members_of_rank(0)[0];
  CHECK(c.descendant_measure(root, 3) == dyadic(343, 9));
}

TEST_CASE("non-binary base") {
  const MAdicTree tree(3, 4);
  const Construction c = build_s(tree, MAdicRational::parse("2/9", 3), 1);
  CHECK(c.members_of_rank(1).size() == 7);
  CHECK(c.residual_measure(c.members_of_rank(0)[0]) == MAdicRational(2, 2, 3));
}

TEST_CASE("build_s errors") {
  CHECK_THROWS_AS(build_s(MAdicTree(2, 8), dyadic(1, 3), 2), CapacityError);
  CHECK_NOTHROW(build_s(MAdicTree(2, 9), dyadic(1, 3), 2));
  CHECK(required_depth(dyadic(1, 3), 6) == 21);
  CHECK_THROWS_AS(build_s(MAdicTree(2, 8), MAdicRational(1, 1, 3), 1), RepresentationError);
  CHECK_THROWS_AS(build_s(MAdicTree(2, 8), dyadic(1, 0), 1), DomainError);
  CHECK_THROWS_AS(build_s(MAdicTree(2, 8), dyadic(0, 0), 1), DomainError);
}

TEST_CASE("worked chain q=2, alpha=1/2, z=3/2") {
  const ExtremalParams params = ExtremalParams::from_z(e32, 1.0, dyadic(1, 1), 1.5);
  CHECK(std::abs(params.gamma - 4.0 / 3) < 1e-15);
  CHECK(std::abs(params.beta - 1.0) < 1e-15);
  CHECK(std::abs(params.ratio(2) - 8.0 / 9) < 1e-15);
  CHECK(std::abs(params.lambda - std::sqrt(2.0) / 3) < 1e-15);
  CHECK(std::abs(params.gamma - (params.beta + 1) / (params.beta + 1 - params.beta * 0.5)) < 1e-15);

  const double a_tau = std::pow(1.0, 2) / 2;
  CHECK(std::abs(extremal_z(2, 0.5, a_tau) - 1.5) < 1e-15);

  // lq converges; lp has ratio γ³/2 > 1
  CHECK_THROWS_AS(analytic_norms(params, std::nullopt), DivergenceError);

  const unsigned M = 8;
  const Construction c = build_s(MAdicTree(2, M + 1), dyadic(1, 1), M);
  const StepFunction phi = build_phi(params, c);
  CHECK(std::abs(phi[phi.size() - 1] - 2.0 / 3) < 1e-15);  // A_X is the right half
  const AnalyticNorms n = analytic_norms(params, M);
  CHECK(std::abs(n.lq - 2 * (1 - std::pow(8.0 / 9, M + 1))) < 1e-13);
  CHECK(oracle::rel(integrate(phi, 2), n.lq) < 1e-12);
  CHECK(oracle::rel(integrate(phi, 1), n.l1) < 1e-12);
  CHECK(oracle::rel(integrate(phi, 3), n.lp) < 1e-12);

  double sum_x2 = 0;
  for (double x : c.weights(params)) sum_x2 += x * x;
  CHECK(oracle::rel(sum_x2, n.lq) < 1e-12);
}

TEST_CASE("full-series norms") {
  // γ^p (1-α) < 1 needs p < log 2 / log(4/3) here
  const Exponents e = Exponents::make(2.2, 2);
  const ExtremalParams params = ExtremalParams::from_z(e, 1.0, dyadic(1, 1), 1.5);
  const AnalyticNorms n = analytic_norms(params, std::nullopt);
  CHECK(std::abs(n.lq - 2) < 1e-14);
  CHECK(std::abs(n.l1 - 1) < 1e-14);

  // the reference pair along α = 1/10 in base ten
  const ExtremalParams ten = ExtremalParams::from_surface(e32, 1.0, kA, MAdicRational::parse("0.1", 10));
  CHECK(std::abs(ten.z - (1 + std::sqrt(0.9 * 0.16))) < 1e-14);
  const AnalyticNorms t = analytic_norms(ten, std::nullopt);
  CHECK(oracle::rel(t.lower_bound, 6.699628404873069543) < 1e-13);
  CHECK(oracle::rel(t.lq, kA) < 1e-13);
  CHECK(oracle::rel(t.l1, 1.0) < 1e-13);
  CHECK(t.lp == doctest::Approx(2.554).epsilon(0.002));

  const ExtremalParams eighth = ExtremalParams::from_surface(e32, 1.0, kA, dyadic(1, 3));
  CHECK(oracle::rel(analytic_norms(eighth, std::nullopt).lower_bound, 6.624415821444477537) < 1e-13);

  const ExtremalParams tiny = ExtremalParams::from_surface(e32, 1.0, kA, dyadic(1, 10));
  CHECK(oracle::rel(analytic_norms(tiny, std::nullopt).lower_bound, 6.997070278423597917) < 1e-12);

  // maxRank = 0 keeps one term of each series
  const AnalyticNorms zero = analytic_norms(eighth, 0u);
  CHECK(oracle::rel(zero.l1, eighth.lambda * std::pow(0.125, 0.5)) < 1e-14);
  CHECK(oracle::rel(zero.lq, eighth.lambda * eighth.lambda) < 1e-14);
}

TEST_CASE("extremal params errors") {
  CHECK_THROWS_AS(ExtremalParams::from_z(e32, 0, dyadic(1, 1), 1.5), DomainError);
  CHECK_THROWS_AS(ExtremalParams::from_z(e32, 1, dyadic(1, 1), 1.0), DomainError);
  CHECK_THROWS_AS(ExtremalParams::from_surface(e32, 1, 0.9, dyadic(1, 1)), DomainError);
}

TEST_CASE("verification passes on the reference construction") {
  const ExtremalParams params = ExtremalParams::from_surface(e32, 1.0, kA, dyadic(1, 3));
  for (unsigned M : {0u, 1u, 3u}) {
    const Construction c = build_s(MAdicTree(2, required_depth(dyadic(1, 3), M)), dyadic(1, 3), M);
    const StepFunction phi = build_phi(params, c);
    const VerificationReport r = verify_construction(params, c, phi);
    for (const auto& check : r.checks) {
      CAPTURE(check.name);
      CAPTURE(check.detail);
      CHECK(check.passed);
    }
    CHECK(r.passed());
    CHECK(r.tree_lower_bound <= r.maximal_integral * (1 + 1e-12));
    CHECK(r.maximal_integral <= r.upper_bound * (1 + 1e-12));
    CHECK(r.tail_ratio == doctest::Approx(0.98113).epsilon(1e-4));
  }
  std::ostringstream sidecar;
  const Construction c = build_s(MAdicTree(2, 6), dyadic(1, 3), 1);
  write_construction_sidecar(sidecar, params, c);
  const std::string text = sidecar.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);  // header, the root and its 7 children 
}

TEST_CASE("build_phi rejects mismatched alpha") {
  const ExtremalParams params = ExtremalParams::from_surface(e32, 1.0, kA, dyadic(1, 2));
  const Construction c = build_s(MAdicTree(2, 6), dyadic(1, 3), 1);
  CHECK_THROWS_AS(build_phi(params, c), DomainError);
  const StepFunction zero = StepFunction::constant(c.tree(), 0.0);
  CHECK_THROWS_AS(verify_construction(params, c, zero), DomainError);
}

TEST_CASE("lower bound increases toward the exact value") {
  const double exact = bellman_on_surface(e32, 1.0, kA);
  double prev = 0;
  for (unsigned k = 1; k <= 10; ++k) {
    const ExtremalParams params = ExtremalParams::from_surface(e32, 1.0, kA, dyadic(1, k));
    const double lb = analytic_norms(params, std::nullopt).lower_bound;
    CAPTURE(k);
    CHECK(lb > prev);
    CHECK(lb < exact);
    prev = lb;
  }
  CHECK(prev >= 0.95 * exact);
}
