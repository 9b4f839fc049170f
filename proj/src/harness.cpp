#include "dyadic_bellman/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "dyadic_bellman/extremal.hpp"

namespace dyadic_bellman {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double relative_slack(double larger, double smaller) {
  const double scale = std::max({std::abs(larger), std::abs(smaller),
                                 std::numeric_limits<double>::min()});
  return (larger - smaller) / scale;
}

std::string serialize(const StepFunction& phi) {
  std::ostringstream out;
  write_step_function(out, phi);
  return out.str();
}

std::string describe(const Exponents& exps) {
  std::ostringstream out;
  out << "(p=" << exps.p() << ", q=" << exps.q() << ")";
  return out.str();
}

struct TrialOutcome {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::vector<std::string> messages;
  std::optional<StepFunction> witness;

  void record(bool passed, double slack, const StepFunction& phi, std::string message) {
    ++checks;
    worst_slack = std::min(worst_slack, slack);
    if (!passed) {
      ++violations;
      messages.push_back(std::move(message));
      if (!witness) witness = phi;
    }
  }
};

// Leaf values on a 2^-20 grid and at most 2^20, so every cell sum of a
// 64-leaf tree is exact and both maximal-operator routes must agree bitwise.
StepFunction quantized(const StepFunction& phi) {
  std::vector<double> values(phi.values().begin(), phi.values().end());
  for (double& v : values) v = std::round(std::min(v, 0x1p20) * 0x1p20) * 0x1p-20;
  return StepFunction(phi.tree(), std::move(values));
}

unsigned brute_force_depth(unsigned m, unsigned requested) {
  unsigned depth = 0;
  std::uint64_t leaves = 1;
  while (depth < requested && leaves * m <= 64) {
    leaves *= m;
    ++depth;
  }
  return depth;
}

TrialOutcome run_trial(std::string_view suite, const SuiteConfig& config,
                       const std::vector<Exponents>& grid, std::uint64_t trial) {
  TrialOutcome out;
  if (suite == "brute-force") {
    SuiteConfig small = config;
    small.max_depth = brute_force_depth(config.m, config.max_depth);
    const StepFunction phi = quantized(random_step(small, trial));
    const StepFunction fast = maximal_operator(phi);
    const StepFunction naive = naive_maximal_operator(phi);
    const bool equal = std::equal(fast.values().begin(), fast.values().end(),
                                  naive.values().begin());
    out.record(equal, 0.0, phi, "one-pass and naive maximal operators differ");
    return out;
  }

  const StepFunction phi = random_step(config, trial);
  for (const Exponents& exps : grid) {
    if (suite == "lemma41") {
      const Lemma41Report r = check_lemma41(phi, exps, config.tolerance);
      out.record(r.passed, r.slack / r.scale, phi,
                 "pointwise maximal inequality violated at " + describe(exps) + ": lhs=" +
                     std::to_string(r.lhs) + " rhs=" + std::to_string(r.rhs));
    } else if (suite == "weak-type") {
      const WeakTypeReport r = check_weak_type(phi, exps, config.tolerance);
      out.record(r.passed, std::min(r.worst_weak, r.worst_holder), phi,
                 "weak-type inequality violated at " + describe(exps));
    } else if (suite == "domination") {
      try {
        const DominationReport r = check_domination(phi, exps, config.tolerance);
        out.record(r.passed, relative_slack(r.bound.upper_bound, r.integral), phi,
                   "upper bound violated at " + describe(exps) + ": integral=" +
                       std::to_string(r.integral) +
                       " bound=" + std::to_string(r.bound.upper_bound));
      } catch (const Error& e) {
        out.record(false, -1.0, phi, std::string("upper bound failed: ") + e.what());
      }
    }
  }
  return out;
}

}  // namespace

void SuiteConfig::validate() const {
  if (trials < 1) throw DomainError("suite needs trials >= 1");
  if (!(tolerance > 0.0)) throw DomainError("suite needs tolerance > 0");
  if (m < 2) throw DomainError("suite needs m >= 2");
}

std::vector<Exponents> default_exponent_grid() {
  return {Exponents::make(3, 2), Exponents::make(2, 1.5), Exponents::make(5, 3)};
}

StepFunction random_step(const SuiteConfig& config, std::uint64_t trial) {
  std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(trial)));
  static constexpr StepMode kMixture[] = {StepMode::Uniform, StepMode::HeavyTail,
                                          StepMode::SparseSpike};
  const auto pick = std::uniform_int_distribution<int>(0, 2)(rng);
  return random_step(config, trial, kMixture[pick]);
}

StepFunction random_step(const SuiteConfig& config, std::uint64_t trial, StepMode mode) {
  // Separate stream from the mode draw above, so forcing a mode does not
  // perturb the values of the other trials.
  std::mt19937_64 rng(splitmix64(splitmix64(config.seed) ^ trial));
  const unsigned depth =
      config.max_depth == 0
          ? 0
          : std::uniform_int_distribution<unsigned>(1, config.max_depth)(rng);
  const MAdicTree tree(config.m, depth);
  const std::size_t n = tree.leaf_count();
  std::vector<double> values(n, 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  switch (mode) {
    case StepMode::Uniform: {
      const double scale = std::exp(std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
      for (double& v : values) v = scale * unit(rng);
      break;
    }
    case StepMode::HeavyTail: {
      // Pareto(1.2) shifted to start at 0, with a third of the leaves zeroed.
      for (double& v : values) {
        const double u = unit(rng);
        v = unit(rng) < 1.0 / 3.0 ? 0.0 : std::pow(1.0 - u, -1.0 / 1.2) - 1.0;
      }
      break;
    }
    case StepMode::SparseSpike: {
      const unsigned spikes = std::uniform_int_distribution<unsigned>(1, std::max(1u, depth))(rng);
      std::uniform_int_distribution<std::size_t> where(0, n - 1);
      std::uniform_real_distribution<double> height(1.0, 100.0);
      for (unsigned s = 0; s < spikes; ++s) values[where(rng)] = height(rng);
      break;
    }
    case StepMode::Zero:
      break;
  }
  if (mode != StepMode::Zero && std::all_of(values.begin(), values.end(),
                                            [](double v) { return v == 0.0; })) {
    values[0] = 1.0;
  }
  return StepFunction(tree, std::move(values));
}

Lemma41Report check_lemma41(const StepFunction& phi, const Exponents& exps, double tolerance) {
  if (phi.is_zero()) throw DomainError("maximal inequality check needs phi not identically 0");
  const double p = exps.p();
  const double q = exps.q();
  const StepFunction mphi = maximal_operator(phi);
  const double f = integrate(phi, 1.0);
  const double A = integrate(phi, q);
  const double c = p / (p - q);
  const double mixed = integrate_product(mphi, p - q, phi, q);

  Lemma41Report r;
  r.lhs = integrate(mphi, p);
  const double t1 = std::pow(f, p);
  const double t2 = c * std::pow(f, p - q) * A;
  const double t3 = c * mixed;
  r.rhs = t1 - t2 + t3;
  r.slack = r.rhs - r.lhs;
  r.scale = std::max({t1, t2, t3, r.lhs});
  r.passed = r.slack >= -tolerance * r.scale;
  return r;
}

WeakTypeReport check_weak_type(const StepFunction& phi, const Exponents& exps,
                               double tolerance) {
  const double q = exps.q();
  const StepFunction mphi = maximal_operator(phi);
  const double f = integrate(phi, 1.0);
  const std::size_t n = phi.size();
  const double leaf_mu = 1.0 / static_cast<double>(phi.tree().leaf_count());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mphi[a] > mphi[b]; });

  std::vector<double> levels;
  for (std::size_t i : order) {
    if (levels.empty() || mphi[i] != levels.back()) levels.push_back(mphi[i]);
  }
  std::vector<double> lambdas;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    lambdas.push_back(levels[i]);
    if (i + 1 < levels.size()) lambdas.push_back(0.5 * (levels[i] + levels[i + 1]));
  }

  WeakTypeReport report;
  report.worst_weak = std::numeric_limits<double>::infinity();
  report.worst_holder = std::numeric_limits<double>::infinity();
  CompensatedSum mass;    // Σ φ over E
  CompensatedSum mass_q;  // Σ φ^q over E
  std::size_t count = 0;
  for (double lambda : lambdas) {  // decreasing
    if (!(lambda > f)) break;
    while (count < n && mphi[order[count]] >= lambda) {
      const double v = phi[order[count]];
      mass.add(v);
      mass_q.add(std::pow(v, q));
      ++count;
    }
    const double mu = static_cast<double>(count) * leaf_mu;
    const double integral = mass.value() * leaf_mu;
    const double integral_q = mass_q.value() * leaf_mu;
    report.worst_weak = std::min(report.worst_weak, relative_slack(integral, lambda * mu));
    report.worst_holder =
        std::min(report.worst_holder, relative_slack(integral_q / std::pow(lambda, q), mu));
    ++report.levels_checked;
  }
  if (report.levels_checked == 0) {
    report.worst_weak = 0.0;
    report.worst_holder = 0.0;
  }
  report.passed = report.worst_weak >= -tolerance && report.worst_holder >= -tolerance;
  return report;
}

DominationReport check_domination(const StepFunction& phi, const Exponents& exps,
                                  double tolerance) {
  if (phi.is_zero()) throw DomainError("domination check needs phi not identically 0");
  DominationReport r;
  r.triple = {integrate(phi, 1.0), integrate(phi, exps.q()), integrate(phi, exps.p())};
  r.integral = integrate(maximal_operator(phi), exps.p());

  if (phi.is_constant()) {
    // k = q exactly, h^{-1}(q) = 1: the bound is F and it is attained.
    r.equality_case = true;
    r.bound.k = exps.q();
    r.bound.upper_bound = r.triple.F;
    r.passed = std::abs(r.integral - r.triple.F) <= tolerance * r.triple.F;
    return r;
  }
  r.bound = upper_bound(exps, r.triple);
  r.passed = relative_slack(r.bound.upper_bound, r.integral) >= -tolerance;
  return r;
}

StepFunction naive_maximal_operator(const StepFunction& phi) {
  const MAdicTree& tree = phi.tree();
  std::vector<double> out(phi.size(), 0.0);
  for (std::size_t leaf = 0; leaf < phi.size(); ++leaf) {
    double best = 0.0;
    for (unsigned level = 0; level <= tree.depth(); ++level) {
      const std::uint64_t width = tree.leaves_under(level);
      const std::uint64_t begin = (leaf / width) * width;
      double sum = 0.0;
      for (std::uint64_t i = begin; i < begin + width; ++i) sum += phi[i];
      best = std::max(best, sum / static_cast<double>(width));
    }
    out[leaf] = best;
  }
  return StepFunction(tree, std::move(out));
}

std::vector<std::string> suite_names() {
  return {"lemma41", "weak-type", "domination", "brute-force"};
}

SuiteReport run_suite(std::string_view suite, const SuiteConfig& config) {
  config.validate();
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw DomainError("unknown suite '" + std::string(suite) + "'");
  }
  const std::vector<Exponents> grid =
      config.exponents.empty() ? default_exponent_grid() : config.exponents;

  std::vector<TrialOutcome> outcomes(config.trials);
  std::atomic<unsigned> next{0};
  auto worker = [&] {
    for (unsigned t = next++; t < config.trials; t = next++) {
      outcomes[t] = run_trial(suite, config, grid, t);
    }
  };
  const unsigned threads =
      std::max(1u, std::min(config.threads ? config.threads : std::thread::hardware_concurrency(),
                            config.trials));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  SuiteReport report;
  report.suite = std::string(suite);
  report.seed = config.seed;
  report.trials = config.trials;
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < outcomes.size(); ++t) {
    TrialOutcome& o = outcomes[t];
    report.checks += o.checks;
    report.violations += o.violations;
    report.worst_slack = std::min(report.worst_slack, o.worst_slack);
    if (!o.witness) continue;
    SuiteFailure failure{t, {}, serialize(*o.witness), {}};
    for (const std::string& m : o.messages) {
      failure.message += (failure.message.empty() ? "" : "; ") + m;
    }
    if (!config.failure_dir.empty()) {
      const std::filesystem::path dir = std::filesystem::path(config.failure_dir) /
                                        (report.suite + "-" + std::to_string(config.seed));
      std::filesystem::create_directories(dir);
      const auto path = dir / ("trial-" + std::to_string(t) + ".txt");
      save_step_function(path.string(), *o.witness);
      failure.path = path.string();
    }
    report.failures.push_back(std::move(failure));
  }
  return report;
}

std::vector<ConvergenceRow> convergence_study(const Exponents& exps, double f, double A,
                                              const std::vector<MAdicRational>& alphas,
                                              TreeShape shape) {
  constexpr std::uint64_t kStudyMemberCap = std::uint64_t{1} << 20;
  const double exact = bellman_on_surface(exps, f, A);

  std::vector<ConvergenceRow> rows;
  for (const MAdicRational& alpha : alphas) {
    const ExtremalParams params = ExtremalParams::from_surface(exps, f, A, alpha);
    const AnalyticNorms full = analytic_norms(params, std::nullopt);

    ConvergenceRow row;
    row.alpha = alpha;
    row.z = params.z;
    row.f_alpha = full.lp;
    row.lower_analytic = full.lower_bound;
    row.exact = exact;
    row.gap = (exact - full.lower_bound) / exact;

    if (alpha.base() != shape.m) {
      throw RepresentationError("alpha " + alpha.to_string() + " is not base " +
                                std::to_string(shape.m));
    }
    // Deepest tree allowed by the shape and the leaf cap.
    unsigned depth_cap = 0;
    for (std::uint64_t leaves = shape.m;
         depth_cap < shape.max_depth && leaves <= kMaxLeaves; leaves *= shape.m) {
      ++depth_cap;
    }
    const unsigned k = alpha.exponent();
    if (depth_cap >= k) {
      unsigned max_rank = depth_cap / k - 1;
      const std::uint64_t kept = alpha.denominator() - alpha.numerator();
      auto members = [kept](unsigned ranks) {
        std::uint64_t total = 0;
        std::uint64_t band = 1;
        for (unsigned r = 0; r <= ranks; ++r) {
          total += band;
          if (total > kStudyMemberCap) return total;
          band *= kept;
        }
        return total;
      };
      while (max_rank > 0 && members(max_rank) > kStudyMemberCap) --max_rank;

      const MAdicTree tree(shape.m, required_depth(alpha, max_rank));
      const Construction cons = build_s(tree, alpha, max_rank);
      const StepFunction phi = build_phi(params, cons);
      const VerificationReport report = verify_construction(params, cons, phi);
      row.max_rank = max_rank;
      row.depth = tree.depth();
      row.tree_lower = report.tree_lower_bound;
      row.tree_maximal = report.maximal_integral;
      row.tree_verified = report.passed();
    }
    rows.push_back(row);
  }
  return rows;
}

bool analytic_column_increasing(const std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].lower_analytic > rows[i - 1].lower_analytic)) return false;
  }
  return true;
}

}  // namespace dyadic_bellman
