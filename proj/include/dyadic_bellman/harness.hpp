#pragma once

// Randomized verification of the maximal-operator inequalities on step
// functions, plus the α -> 0 convergence study of the extremal family.
// Every suite is deterministic under its seed, and every failure carries
// the offending function in the tree text format so it can be replayed.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic_bellman/bellman.hpp"
#include "dyadic_bellman/exponents.hpp"
#include "dyadic_bellman/madic.hpp"
#include "dyadic_bellman/tree.hpp"

namespace dyadic_bellman {

enum class StepMode { Uniform, HeavyTail, SparseSpike, Zero };

struct SuiteConfig {
  std::uint64_t seed = 0;
  unsigned trials = 1000;
  unsigned m = 2;
  unsigned max_depth = 10;  // depth drawn uniformly from [1, max_depth]
  std::vector<Exponents> exponents;
  double tolerance = 1e-9;  // relative, favorable direction only
  unsigned threads = 0;     // 0: hardware concurrency
  std::string failure_dir;  // when set, failing functions are written here

  /// Throws DomainError unless trials >= 1 and tolerance > 0.
  void validate() const;
};

/// The (p, q) grid used when a config leaves `exponents` empty.
std::vector<Exponents> default_exponent_grid();

/// Trial `trial` of the seeded stream; the mode is drawn from the mixture
/// {uniform, heavy-tail, sparse-spike}.
StepFunction random_step(const SuiteConfig& config, std::uint64_t trial);
StepFunction random_step(const SuiteConfig& config, std::uint64_t trial, StepMode mode);

struct Lemma41Report {
  double lhs = 0.0;    // ∫(Mφ)^p
  double rhs = 0.0;    // f^p - p/(p-q) f^{p-q} A + p/(p-q) ∫(Mφ)^{p-q} φ^q
  double slack = 0.0;  // rhs - lhs
  double scale = 0.0;  // magnitude of the largest term, for relative slack
  bool passed = false;
};

/// Throws DomainError for φ ≡ 0.
Lemma41Report check_lemma41(const StepFunction& phi, const Exponents& exps,
                            double tolerance = 1e-9);

struct WeakTypeReport {
  std::size_t levels_checked = 0;
  double worst_weak = 0.0;    // min over λ of relative slack in λ μ(E) <= ∫_E φ
  double worst_holder = 0.0;  // min over λ of relative slack in μ(E) <= λ^{-q} ∫_E φ^q
  bool passed = false;
};

/// Sweeps λ > f over the distinct values of Mφ and the midpoints between them.
WeakTypeReport check_weak_type(const StepFunction& phi, const Exponents& exps,
                               double tolerance = 1e-9);

struct DominationReport {
  ConstraintTriple triple;
  double integral = 0.0;  // ∫(Mφ)^p
  BoundReport bound;
  bool equality_case = false;  // constant φ: k = q and the bound equals F
  bool passed = false;
};

DominationReport check_domination(const StepFunction& phi, const Exponents& exps,
                                  double tolerance = 1e-9);

/// Mφ by enumerating every ancestor of every leaf and summing its leaves.
StepFunction naive_maximal_operator(const StepFunction& phi);

struct SuiteFailure {
  std::uint64_t trial = 0;
  std::string message;
  std::string serialized;  // the function in tree text format
  std::string path;        // where it was written, if anywhere
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  unsigned trials = 0;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double worst_slack = 0.0;  // smallest relative slack seen
  std::vector<SuiteFailure> failures;

  bool passed() const noexcept { return violations == 0; }
};

/// Suite names accepted by run_suite.
std::vector<std::string> suite_names();

/// Runs "lemma41", "weak-type", "domination" or "brute-force". Throws
/// DomainError for an unknown suite name.
SuiteReport run_suite(std::string_view suite, const SuiteConfig& config);

struct ConvergenceRow {
  MAdicRational alpha;
  double z = 0.0;
  double f_alpha = 0.0;           // F(α) = ∫φ_α^p, full series
  double lower_analytic = 0.0;    // z^p F(α)
  double exact = 0.0;             // Bellman value on the surface
  double gap = 0.0;               // (exact - lower_analytic) / exact
  std::optional<unsigned> max_rank;  // tree columns present when set
  unsigned depth = 0;
  double tree_lower = 0.0;     // Σ a_I y_I^p of the truncated φ
  double tree_maximal = 0.0;   // ∫(Mφ)^p of the truncated φ
  bool tree_verified = false;  // verify_construction passed
};

struct TreeShape {
  unsigned m = 2;
  unsigned max_depth = 20;
};

/// One row per α (decreasing base-m rationals). Tree columns are filled
/// with the deepest rank that fits in `shape` and the member cap.
std::vector<ConvergenceRow> convergence_study(const Exponents& exps, double f, double A,
                                              const std::vector<MAdicRational>& alphas,
                                              TreeShape shape);

/// True when lower_analytic strictly increases down the table.
bool analytic_column_increasing(const std::vector<ConvergenceRow>& rows);

}  // namespace dyadic_bellman
