#pragma once

// Extremal step functions approaching the Bellman value on the critical
// surface.
//
// Fix α = j/m^k. Every selected cell I spawns F(I): the first m^k - j of its
// depth-k descendants, so Σ_{J∈F(I)} μ(J) = (1-α) μ(I), and leaves the
// residual set A_I (the last j descendants) of measure α μ(I). Iterating from
// the root gives the family S with ranks r(I). On A_I the function takes the
// value x_I / a_I^{1/q} with x_I = λ γ^{r(I)} μ(I)^{1/q}.
//
// Everything is truncated at a finite max rank; the function is 0 below it,
// and all comparisons are made against the matching partial geometric sums.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyadic_bellman/exponents.hpp"
#include "dyadic_bellman/madic.hpp"
#include "dyadic_bellman/tree.hpp"

namespace dyadic_bellman {

struct ExtremalParams {
  Exponents exps;
  double f = 0.0;
  MAdicRational alpha;
  double z = 0.0;
  double beta = 0.0;    // (z - 1) / (1 - α)
  double gamma = 0.0;   // (z - α) / (z (1 - α)) = (β+1)/(β+1-βα)
  double lambda = 0.0;  // f α^{-1/q'} (1 - γ(1-α))

  /// Throws DomainError unless f > 0, 0 < α < 1, z > 1 and γ^q(1-α) < 1.
  static ExtremalParams from_z(const Exponents& exps, double f, MAdicRational alpha, double z);

  /// z solves the extremal root equation with τ = f^q / A, which makes the
  /// untruncated ∫φ^q equal A.
  static ExtremalParams from_surface(const Exponents& exps, double f, double A,
                                     MAdicRational alpha);

  double alpha_value() const { return alpha.value(); }
  /// γ^r (1-α), the ratio of the rank series for exponent r.
  double ratio(double r) const;
  /// 1 - γ^r (1-α), without cancellation.
  double one_minus_ratio(double r) const;
};

struct Member {
  unsigned rank = 0;
  NodeAddress node;
  LeafRange residual;  // A_I
};

class Construction {
 public:
  Construction(MAdicTree tree, MAdicRational alpha, unsigned max_rank,
               std::vector<Member> members, std::vector<std::size_t> rank_offsets);

  const MAdicTree& tree() const noexcept { return tree_; }
  const MAdicRational& alpha() const noexcept { return alpha_; }
  unsigned max_rank() const noexcept { return max_rank_; }
  /// k in α = j/m^k: levels between consecutive ranks.
  unsigned step() const noexcept { return alpha_.exponent(); }

  std::span<const Member> members() const noexcept { return members_; }
  std::span<const Member> members_of_rank(unsigned rank) const;

  /// μ(A_I), exact.
  MAdicRational residual_measure(const Member& member) const;
  /// Σ_{J ∈ F(I)} μ(J), exact.
  MAdicRational family_measure(const Member& member) const;
  /// b_offset(I) = Σ μ(J) over members J ⊆ I with r(J) = r(I) + offset, exact.
  MAdicRational descendant_measure(const Member& member, unsigned offset) const;

  /// x_I for every member, in member order.
  std::vector<double> weights(const ExtremalParams& params) const;

 private:
  MAdicTree tree_;
  MAdicRational alpha_;
  unsigned max_rank_;
  std::vector<Member> members_;
  std::vector<std::size_t> rank_offsets_;  // size max_rank + 2
};

/// Cap on the number of members a construction may hold.
inline constexpr std::uint64_t kMaxMembers = std::uint64_t{1} << 22;

/// Realizes S_α on `tree` down to `max_rank`. Throws RepresentationError if
/// α is not j/m^k with the tree's m, DomainError unless 0 < α < 1,
/// CapacityError if depth < k (max_rank + 1) or the family is too large.
Construction build_s(const MAdicTree& tree, const MAdicRational& alpha, unsigned max_rank);

/// Minimal tree depth hosting ranks 0..max_rank for α = j/m^k.
unsigned required_depth(const MAdicRational& alpha, unsigned max_rank);

/// φ_α truncated after `cons.max_rank()`. Throws DomainError when params
/// and construction disagree on α.
StepFunction build_phi(const ExtremalParams& params, const Construction& cons);

struct AnalyticNorms {
  double l1 = 0.0;           // ∫φ
  double lq = 0.0;           // ∫φ^q
  double lp = 0.0;           // ∫φ^p = F(α)
  double lower_bound = 0.0;  // z^p F(α)
};

/// Closed-form sums over ranks 0..max_rank, or the full series when
/// max_rank is empty (DivergenceError if a required ratio is >= 1).
AnalyticNorms analytic_norms(const ExtremalParams& params, std::optional<unsigned> max_rank);

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;  // relative unless stated in `detail`
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  AnalyticNorms analytic;        // truncated partial sums
  double tree_l1 = 0.0;
  double tree_lq = 0.0;
  double tree_lp = 0.0;
  double tree_lower_bound = 0.0;  // Σ_{r(I) <= max rank} a_I y_I^p, y_I from the tree
  double maximal_integral = 0.0;  // ∫(Mφ)^p
  double upper_bound = 0.0;       // at the truncated φ's own (f, A, F)
  double tail_ratio = 0.0;        // γ^p (1-α)

  bool passed() const;
};

/// Cross-checks tree-integrated quantities of φ against the analytic
/// partial sums, the average identity for every member, and the lower and
/// upper bounds on ∫(Mφ)^p. `tolerance` applies to the equality checks;
/// inequalities use 1e-9 relative slack in the favorable direction.
VerificationReport verify_construction(const ExtremalParams& params, const Construction& cons,
                                       const StepFunction& phi, double tolerance = 1e-10);

/// One line per member: rank level index x_I.
void write_construction_sidecar(std::ostream& out, const ExtremalParams& params,
                                const Construction& cons);

}  // namespace dyadic_bellman
