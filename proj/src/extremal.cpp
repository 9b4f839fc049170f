#include "dyadic_bellman/extremal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "dyadic_bellman/bellman.hpp"

namespace dyadic_bellman {

namespace {

// Σ_{i < terms} ρ^i given 1 - ρ; terms empty means the full series.
double geometric_sum(double one_minus_rho, std::optional<unsigned> terms) {
  if (!terms) {
    if (!(one_minus_rho > 0.0)) throw DivergenceError("geometric ratio >= 1; series diverges");
    return 1.0 / one_minus_rho;
  }
  const double n = static_cast<double>(*terms);
  if (one_minus_rho == 0.0) return n;
  return -std::expm1(n * std::log1p(-one_minus_rho)) / one_minus_rho;
}

double relative_gap(double value, double reference) {
  const double scale = std::max(std::abs(reference), std::numeric_limits<double>::min());
  return std::abs(value - reference) / scale;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require_proper_fraction(const MAdicRational& alpha) {
  if (!(alpha.numerator() > 0 && alpha.exponent() > 0)) {
    throw DomainError("alpha must lie in (0, 1), got " + alpha.to_string());
  }
}

}  // namespace

ExtremalParams ExtremalParams::from_z(const Exponents& exps, double f, MAdicRational alpha,
                                      double z) {
  if (!(f > 0.0 && std::isfinite(f))) throw DomainError("extremal construction needs f > 0");
  require_proper_fraction(alpha);
  if (!(z > 1.0 && std::isfinite(z))) throw DomainError("extremal construction needs z > 1");

  ExtremalParams params{exps, f, alpha, z};
  const double a = alpha.value();
  params.beta = (z - 1.0) / (1.0 - a);
  params.gamma = (z - a) / (z * (1.0 - a));
  // 1 - γ(1-α) = α / z
  params.lambda = f * std::pow(a, -1.0 / exps.q_conj()) * (a / z);
  if (!(params.one_minus_ratio(exps.q()) > 0.0)) {
    throw DomainError("gamma^q (1 - alpha) >= 1: z = " + format_double(z) +
                      " is too large for alpha = " + alpha.to_string());
  }
  return params;
}

ExtremalParams ExtremalParams::from_surface(const Exponents& exps, double f, double A,
                                            MAdicRational alpha) {
  if (!(f > 0.0 && A > 0.0)) throw DomainError("extremal construction needs f > 0, A > 0");
  const double tau = std::pow(f, exps.q()) / A;
  if (!(tau < 1.0)) throw DomainError("extremal construction needs f^q < A");
  require_proper_fraction(alpha);
  return from_z(exps, f, alpha, extremal_z(exps.q(), alpha.value(), tau));
}

double ExtremalParams::ratio(double r) const {
  return std::pow(gamma, r) * (1.0 - alpha_value());
}

double ExtremalParams::one_minus_ratio(double r) const {
  const double a = alpha_value();
  return extremal_gap(r, a, z) / (std::pow(z, r) * std::pow(1.0 - a, r - 1.0));
}

Construction::Construction(MAdicTree tree, MAdicRational alpha, unsigned max_rank,
                           std::vector<Member> members, std::vector<std::size_t> rank_offsets)
    : tree_(tree),
      alpha_(alpha),
      max_rank_(max_rank),
      members_(std::move(members)),
      rank_offsets_(std::move(rank_offsets)) {}

std::span<const Member> Construction::members_of_rank(unsigned rank) const {
  if (rank > max_rank_) throw DomainError("rank beyond the construction's max rank");
  return std::span<const Member>(members_).subspan(
      rank_offsets_[rank], rank_offsets_[rank + 1] - rank_offsets_[rank]);
}

MAdicRational Construction::residual_measure(const Member& member) const {
  return tree_.leaf_measure(member.residual.size());
}

MAdicRational Construction::family_measure(const Member& member) const {
  if (member.rank < max_rank_) return descendant_measure(member, 1);
  // F(I) of the last rank is not materialized; it is I minus A_I.
  const LeafRange cell = tree_.leaves_of(member.node);
  return tree_.leaf_measure(cell.size() - member.residual.size());
}

MAdicRational Construction::descendant_measure(const Member& member, unsigned offset) const {
  const unsigned rank = member.rank + offset;
  const auto band = members_of_rank(rank);
  const std::uint64_t fan = checked_pow(tree_.branching(), step() * offset);
  const std::uint64_t lo = member.node.index * fan;
  const std::uint64_t hi = lo + fan;
  const auto by_index = [](const Member& m, std::uint64_t idx) { return m.node.index < idx; };
  const auto first = std::lower_bound(band.begin(), band.end(), lo, by_index);
  const auto last = std::lower_bound(first, band.end(), hi, by_index);
  return MAdicRational(static_cast<std::uint64_t>(last - first), step() * rank,
                       tree_.branching());
}

std::vector<double> Construction::weights(const ExtremalParams& params) const {
  std::vector<double> out;
  out.reserve(members_.size());
  const double inv_q = 1.0 / params.exps.q();
  for (const Member& member : members_) {
    const double mu = tree_.node_measure(member.node.level).value();
    out.push_back(params.lambda * std::pow(params.gamma, member.rank) * std::pow(mu, inv_q));
  }
  return out;
}

unsigned required_depth(const MAdicRational& alpha, unsigned max_rank) {
  return alpha.exponent() * (max_rank + 1);
}

Construction build_s(const MAdicTree& tree, const MAdicRational& alpha, unsigned max_rank) {
  const unsigned m = tree.branching();
  if (alpha.base() != m) {
    throw RepresentationError("alpha " + alpha.to_string() + " is given in base " +
                              std::to_string(alpha.base()) + " but the tree has m = " +
                              std::to_string(m));
  }
  require_proper_fraction(alpha);
  const unsigned k = alpha.exponent();
  const std::uint64_t fan = alpha.denominator();
  const std::uint64_t j = alpha.numerator();
  const std::uint64_t kept = fan - j;  // |F(I)|

  if (tree.depth() < required_depth(alpha, max_rank)) {
    throw CapacityError("tree depth " + std::to_string(tree.depth()) + " cannot host ranks 0.." +
                        std::to_string(max_rank) + " for alpha = " + alpha.to_string() +
                        "; need depth >= " + std::to_string(required_depth(alpha, max_rank)));
  }
  std::uint64_t total = 0;
  std::uint64_t band = 1;
  for (unsigned r = 0; r <= max_rank; ++r) {
    total += band;
    if (total > kMaxMembers) throw CapacityError("extremal family exceeds the member cap");
    if (r < max_rank) band *= kept;
  }

  std::vector<Member> members;
  members.reserve(total);
  std::vector<std::size_t> offsets{0};
  members.push_back({0, {0, 0}, {}});
  for (unsigned r = 0; r <= max_rank; ++r) {
    const std::size_t begin = offsets.back();
    const std::size_t end = members.size();
    const unsigned child_level = k * (r + 1);
    const std::uint64_t width = tree.leaves_under(child_level);
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t base_index = members[i].node.index * fan;
      members[i].residual = {(base_index + kept) * width, (base_index + fan) * width};
      if (r < max_rank) {
        for (std::uint64_t c = 0; c < kept; ++c) {
          members.push_back({r + 1, {child_level, base_index + c}, {}});
        }
      }
    }
    offsets.push_back(end);
  }
  return Construction(tree, alpha, max_rank, std::move(members), std::move(offsets));
}

StepFunction build_phi(const ExtremalParams& params, const Construction& cons) {
  if (!(params.alpha == cons.alpha())) {
    throw DomainError("parameters use alpha = " + params.alpha.to_string() +
                      " but the construction uses " + cons.alpha().to_string());
  }
  const MAdicTree& tree = cons.tree();
  const std::vector<double> x = cons.weights(params);
  const double a = params.alpha_value();
  const double inv_q = 1.0 / params.exps.q();

  std::vector<double> values(tree.leaf_count(), 0.0);
  const auto members = cons.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const double a_I = a * tree.node_measure(members[i].node.level).value();
    const double value = x[i] / std::pow(a_I, inv_q);
    std::fill(values.begin() + static_cast<std::ptrdiff_t>(members[i].residual.begin),
              values.begin() + static_cast<std::ptrdiff_t>(members[i].residual.end), value);
  }
  return StepFunction(tree, std::move(values));
}

AnalyticNorms analytic_norms(const ExtremalParams& params, std::optional<unsigned> max_rank) {
  const double p = params.exps.p();
  const double q = params.exps.q();
  const double a = params.alpha_value();
  const double lambda = params.lambda;
  std::optional<unsigned> terms;
  if (max_rank) terms = *max_rank + 1;

  AnalyticNorms out;
  out.l1 = lambda * std::pow(a, 1.0 / params.exps.q_conj()) *
           geometric_sum(params.one_minus_ratio(1.0), terms);
  out.lq = std::pow(lambda, q) * geometric_sum(params.one_minus_ratio(q), terms);
  out.lp = std::pow(lambda, p) * std::pow(a, 1.0 - p / q) *
           geometric_sum(params.one_minus_ratio(p), terms);
  out.lower_bound = std::pow(params.z, p) * out.lp;
  return out;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerificationReport verify_construction(const ExtremalParams& params, const Construction& cons,
                                       const StepFunction& phi, double tolerance) {
  constexpr double kInequalitySlack = 1e-9;
  if (!(params.alpha == cons.alpha())) {
    throw DomainError("parameters use alpha = " + params.alpha.to_string() +
                      " but the construction uses " + cons.alpha().to_string());
  }
  if (!(phi.tree() == cons.tree())) throw DomainError("function and construction trees differ");

  const MAdicTree& tree = cons.tree();
  const double p = params.exps.p();
  const double q = params.exps.q();
  const double a = params.alpha_value();
  const unsigned max_rank = cons.max_rank();

  VerificationReport report;
  report.analytic = analytic_norms(params, max_rank);
  report.tail_ratio = params.ratio(p);
  report.tree_l1 = integrate(phi, 1.0);
  report.tree_lq = integrate(phi, q);
  report.tree_lp = integrate(phi, p);

  auto equality = [&](std::string name, double value, double reference) {
    const double gap = relative_gap(value, reference);
    report.checks.push_back({std::move(name), gap <= tolerance, gap,
                             format_double(value) + " vs " + format_double(reference)});
  };
  equality("l1-partial-sum", report.tree_l1, report.analytic.l1);
  equality("lq-partial-sum", report.tree_lq, report.analytic.lq);
  equality("lp-partial-sum", report.tree_lp, report.analytic.lp);

  // Exact measure bookkeeping.
  {
    const MAdicRational one_minus_alpha(cons.alpha().denominator() - cons.alpha().numerator(),
                                        cons.step(), tree.branching());
    bool residual_ok = true;
    bool family_ok = true;
    for (const Member& member : cons.members()) {
      const MAdicRational mu = tree.node_measure(member.node.level);
      residual_ok = residual_ok && cons.residual_measure(member) == cons.alpha() * mu;
      family_ok = family_ok && cons.family_measure(member) == one_minus_alpha * mu;
    }
    report.checks.push_back({"residual-measure", residual_ok, 0.0, "mu(A_I) = alpha mu(I), exact"});
    report.checks.push_back({"family-measure", family_ok, 0.0, "mu(F(I)) = (1-alpha) mu(I), exact"});

    bool rank_ok = true;
    MAdicRational expected(1, 0, tree.branching());
    for (unsigned r = 0; r <= max_rank; ++r) {
      const MAdicRational b_r(cons.members_of_rank(r).size(), cons.step() * r, tree.branching());
      rank_ok = rank_ok && b_r == expected;
      expected = expected * one_minus_alpha;
    }
    report.checks.push_back({"rank-measure", rank_ok, 0.0, "b_r(X) = (1-alpha)^r, exact"});
  }

  const NodeSums sums(phi);
  const StepFunction mphi = maximal_operator(phi);
  report.maximal_integral = integrate(mphi, p);

  const std::vector<double> x = cons.weights(params);
  const auto members = cons.members();
  const double log_rho1 = std::log1p(-a / params.z);  // log γ(1-α)
  double worst_average = 0.0;
  bool pointwise_ok = true;
  CompensatedSum lower;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Member& member = members[i];
    const double y = sums.average(member.node);
    const double a_I = a * tree.node_measure(member.node.level).value();
    // a_I^{1/q} y_I = α/(1-γ(1-α)) x_I, cut to the ranks present below I.
    const double remaining = static_cast<double>(max_rank - member.rank + 1);
    const double expected = params.z * x[i] * -std::expm1(remaining * log_rho1);
    worst_average = std::max(worst_average, relative_gap(std::pow(a_I, 1.0 / q) * y, expected));
    lower.add(a_I * std::pow(y, p));
    for (std::uint64_t leaf = member.residual.begin; leaf < member.residual.end; ++leaf) {
      if (mphi[leaf] < y) pointwise_ok = false;
    }
  }
  report.tree_lower_bound = lower.value();
  report.checks.push_back({"average-identity", worst_average <= tolerance, worst_average,
                           "max over members of a_I^{1/q} y_I vs its closed form"});
  report.checks.push_back({"pointwise-maximal", pointwise_ok, 0.0, "M phi >= y_I on A_I"});

  const double lower_slack =
      (report.maximal_integral - report.tree_lower_bound) / report.tree_lower_bound;
  report.checks.push_back({"lower-bound", lower_slack >= -kInequalitySlack, lower_slack,
                           "int (M phi)^p >= sum a_I y_I^p"});

  try {
    const ConstraintTriple triple{report.tree_l1, report.tree_lq, report.tree_lp};
    report.upper_bound = upper_bound(params.exps, triple).upper_bound;
    const double upper_slack =
        (report.upper_bound - report.maximal_integral) / report.upper_bound;
    report.checks.push_back({"upper-bound", upper_slack >= -kInequalitySlack, upper_slack,
                             "int (M phi)^p <= F h^{-1}(k)^p"});
  } catch (const Error& e) {
    report.checks.push_back({"upper-bound", false, 0.0, e.what()});
  }
  return report;
}

void write_construction_sidecar(std::ostream& out, const ExtremalParams& params,
                                const Construction& cons) {
  out << "# rank level index x_I\n";
  const std::vector<double> x = cons.weights(params);
  const auto members = cons.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    out << members[i].rank << ' ' << members[i].node.level << ' ' << members[i].node.index << ' '
        << format_double(x[i]) << '\n';
  }
}

}  // namespace dyadic_bellman
