// dyadic-bellman: values, bounds, extremal constructions and verification
// suites for the three-variable Bellman function of the tree maximal
// operator.
//
// Exit codes: 0 success, 1 property failure, 2 argument/domain error,
// 3 surface error, 4 tree-capacity error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyadic_bellman/bellman.hpp"
#include "dyadic_bellman/errors.hpp"
#include "dyadic_bellman/extremal.hpp"
#include "dyadic_bellman/harness.hpp"
#include "dyadic_bellman/tree.hpp"

namespace db = dyadic_bellman;
using nlohmann::json;

namespace {

constexpr int kPropertyFailure = 1;
constexpr int kArgumentError = 2;

// Shortest representation that parses back to the same double.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : ""; }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  long steps = 1;

  double at(long i) const {
    return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw db::DomainError("not a number: '" + s + "'");
  }
  return v;
}

// "v" or "lo:hi:n".
Range parse_range(const std::string& text, const char* name) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  Range r;
  if (parts.size() == 1) {
    r.lo = r.hi = parse_double(parts[0]);
  } else if (parts.size() == 3) {
    r.lo = parse_double(parts[0]);
    r.hi = parse_double(parts[1]);
    r.steps = static_cast<long>(parse_double(parts[2]));
    if (r.steps < 1 || r.lo > r.hi || static_cast<double>(r.steps) != parse_double(parts[2])) {
      throw db::DomainError(std::string("empty range for --") + name + ": '" + text + "'");
    }
  } else {
    throw db::DomainError(std::string("--") + name + " expects v or lo:hi:n, got '" + text + "'");
  }
  return r;
}

db::Exponents parse_pq(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw db::DomainError("--pq expects p,q");
  return db::Exponents::make(parse_double(text.substr(0, comma)),
                             parse_double(text.substr(comma + 1)));
}

// ---------------------------------------------------------------- omega

struct OmegaArgs {
  double p = 2.0;
  double tau = 0.0;
  bool json = false;
};

int cmd_omega(const OmegaArgs& a) {
  const double w = db::omega(a.p, a.tau);
  const double residual = db::hp(a.p, w) - a.tau;
  if (a.json) {
    std::cout << json{{"p", a.p}, {"tau", a.tau}, {"omega", w}, {"residual", residual}}.dump()
              << '\n';
  } else {
    std::cout << num(w) << '\n' << "residual " << num(residual) << '\n';
  }
  return 0;
}

// -------------------------------------------------------------- bellman

struct BellmanArgs {
  double p = 3.0;
  double q = 2.0;
  double f = 1.0;
  double A = 0.0;
  std::optional<double> F;  // set: bound at an arbitrary triple
  bool json = false;
};

int cmd_bellman(const BellmanArgs& a) {
  const db::Exponents exps = db::Exponents::make(a.p, a.q);
  double F = 0.0;
  if (a.F) {
    F = *a.F;
  } else {
    F = db::critical_f(exps, a.f, a.A);
  }
  const db::ConstraintTriple triple = a.F ? db::ConstraintTriple::make(exps, a.f, a.A, F)
                                          : db::ConstraintTriple{a.f, a.A, F};
  const db::BoundReport report = db::upper_bound(exps, triple);
  const double omega_q = db::omega(a.q, std::pow(a.f, a.q) / a.A);
  if (a.json) {
    std::cout << json{{"p", a.p},
                      {"q", a.q},
                      {"f", a.f},
                      {"A", a.A},
                      {"F", F},
                      {"omega_q", omega_q},
                      {"exact", opt_json(report.exact_value)},
                      {"upper", report.upper_bound},
                      {"k", report.k},
                      {"on_surface", report.on_surface}}
                     .dump()
              << '\n';
  } else {
    std::cout << "F " << num(F) << '\n'
              << "omega_q " << num(omega_q) << '\n'
              << "exact " << (report.exact_value ? num(*report.exact_value) : "n/a") << '\n'
              << "upper " << num(report.upper_bound) << '\n'
              << "k " << num(report.k) << '\n'
              << "on_surface " << (report.on_surface ? "true" : "false") << '\n';
  }
  return 0;
}

// ------------------------------------------------------------- extremal

struct ExtremalArgs {
  double p = 3.0;
  double q = 2.0;
  double f = 1.0;
  double A = 0.0;
  std::string alpha = "1/8";
  unsigned m = 2;
  unsigned depth = 0;
  unsigned max_rank = 0;
  std::string dump;
  std::string sidecar;
  bool json = false;
};

int cmd_extremal(const ExtremalArgs& a) {
  const db::Exponents exps = db::Exponents::make(a.p, a.q);
  const db::MAdicRational alpha = db::MAdicRational::parse(a.alpha, a.m);
  const db::ExtremalParams params = db::ExtremalParams::from_surface(exps, a.f, a.A, alpha);
  const db::MAdicTree tree(a.m, a.depth);
  const db::Construction cons = db::build_s(tree, alpha, a.max_rank);
  const db::StepFunction phi = db::build_phi(params, cons);
  const db::VerificationReport report = db::verify_construction(params, cons, phi);

  if (!a.dump.empty()) db::save_step_function(a.dump, phi);
  if (!a.sidecar.empty()) {
    std::ofstream out(a.sidecar);
    if (!out) throw db::DomainError("cannot write " + a.sidecar);
    db::write_construction_sidecar(out, params, cons);
  }

  json rows = json::array();
  for (unsigned r = 0; r <= a.max_rank; ++r) {
    const db::AnalyticNorms partial = db::analytic_norms(params, r);
    const double b_r = db::MAdicRational(cons.members_of_rank(r).size(), cons.step() * r, a.m).value();
    rows.push_back({{"rank", r},
                    {"count", cons.members_of_rank(r).size()},
                    {"b_r", b_r},
                    {"l1", partial.l1},
                    {"lq", partial.lq},
                    {"lp", partial.lp},
                    {"lower", partial.lower_bound}});
  }
  const double exact = db::bellman_on_surface(exps, a.f, a.A);

  if (a.json) {
    json checks = json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual},
                        {"detail", c.detail}});
    }
    std::cout << json{{"alpha", alpha.to_string()},
                      {"z", params.z},
                      {"beta", params.beta},
                      {"gamma", params.gamma},
                      {"lambda", params.lambda},
                      {"ranks", rows},
                      {"tree_l1", report.tree_l1},
                      {"tree_lq", report.tree_lq},
                      {"tree_lp", report.tree_lp},
                      {"tree_lower_bound", report.tree_lower_bound},
                      {"maximal_integral", report.maximal_integral},
                      {"upper_bound", report.upper_bound},
                      {"tail_ratio", report.tail_ratio},
                      {"exact", exact},
                      {"checks", checks},
                      {"passed", report.passed()}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "alpha " << alpha.to_string() << "  z " << num(params.z) << "  beta "
              << num(params.beta) << "  gamma " << num(params.gamma) << "  lambda "
              << num(params.lambda) << '\n';
    std::cout << "rank,count,b_r,l1,lq,lp,lower\n";
    for (const auto& row : rows) {
      std::cout << row["rank"].get<unsigned>() << ',' << row["count"].get<std::size_t>() << ','
                << num(row["b_r"].get<double>()) << ',' << num(row["l1"].get<double>()) << ','
                << num(row["lq"].get<double>()) << ',' << num(row["lp"].get<double>()) << ','
                << num(row["lower"].get<double>()) << '\n';
    }
    std::cout << "tree l1 " << num(report.tree_l1) << "  lq " << num(report.tree_lq) << "  lp "
              << num(report.tree_lp) << '\n'
              << "int (M phi)^p " << num(report.maximal_integral) << '\n'
              << "truncated lower bound " << num(report.tree_lower_bound) << '\n'
              << "upper bound at own triple " << num(report.upper_bound) << '\n'
              << "exact on surface " << num(exact) << '\n'
              << "tail ratio gamma^p(1-alpha) " << num(report.tail_ratio) << '\n';
    for (const auto& c : report.checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  residual " << num(c.residual)
                << "  " << c.detail << '\n';
    }
    std::cout << "verification " << (report.passed() ? "PASS" : "FAIL") << '\n';
  }
  return report.passed() ? 0 : kPropertyFailure;
}

// --------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  unsigned trials = 1000;
  std::uint64_t seed = 0;
  unsigned depth = 10;
  unsigned m = 2;
  std::vector<std::string> pq;
  double tolerance = 1e-9;
  unsigned threads = 0;
  std::string out;
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  db::SuiteConfig config;
  config.seed = a.seed;
  config.trials = a.trials;
  config.m = a.m;
  config.max_depth = a.depth;
  config.tolerance = a.tolerance;
  config.threads = a.threads;
  config.failure_dir = a.out;
  for (const auto& s : a.pq) config.exponents.push_back(parse_pq(s));

  std::vector<std::string> suites =
      a.suite == "all" ? db::suite_names() : std::vector<std::string>{a.suite};
  bool all_passed = true;
  json reports = json::array();
  for (const auto& name : suites) {
    const db::SuiteReport r = db::run_suite(name, config);
    all_passed = all_passed && r.passed();
    if (a.json) {
      json failures = json::array();
      for (const auto& f : r.failures) {
        failures.push_back({{"trial", f.trial}, {"message", f.message}, {"path", f.path}});
      }
      reports.push_back({{"suite", r.suite},
                         {"seed", r.seed},
                         {"trials", r.trials},
                         {"checks", r.checks},
                         {"violations", r.violations},
                         {"worst_slack", r.worst_slack},
                         {"passed", r.passed()},
                         {"failures", failures}});
    } else {
      std::cout << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << ", " << r.violations
                << " violations in " << r.checks << " checks (" << r.trials
                << " trials, seed " << r.seed << ", worst relative slack "
                << num(r.worst_slack) << ")\n";
      for (const auto& f : r.failures) {
        std::cout << "  trial " << f.trial << ": " << f.message;
        if (!f.path.empty()) std::cout << " [" << f.path << "]";
        std::cout << '\n';
        if (f.path.empty()) std::cout << f.serialized;
      }
    }
  }
  if (a.json) std::cout << reports.dump(2) << '\n';
  return all_passed ? 0 : kPropertyFailure;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string p = "3";
  std::string q = "2";
  std::string f = "1";
  std::string A;
  std::string F;
  std::string format = "csv";
};

int cmd_sweep(const SweepArgs& a) {
  if (a.format != "csv" && a.format != "json") {
    throw db::DomainError("--format must be csv or json");
  }
  const Range rp = parse_range(a.p, "p");
  const Range rq = parse_range(a.q, "q");
  const Range rf = parse_range(a.f, "f");
  const Range rA = parse_range(a.A, "A");
  const std::optional<Range> rF =
      a.F.empty() ? std::nullopt : std::optional<Range>(parse_range(a.F, "F"));

  static const char* kColumns[] = {"p", "q", "f", "A", "F", "omega_q", "exact", "upper", "k"};
  bool violated = false;
  json rows = json::array();
  if (a.format == "csv") {
    for (std::size_t i = 0; i < std::size(kColumns); ++i) std::cout << (i ? "," : "") << kColumns[i];
    std::cout << '\n';
  }

  auto emit = [&](double p, double q, double f, double A, std::optional<double> F) {
    const db::Exponents exps = db::Exponents::make(p, q);
    const double omega_q = db::omega(q, std::pow(f, q) / A);
    std::optional<double> exact;
    std::optional<double> upper;
    std::optional<double> k;
    try {
      if (!F) F = db::critical_f(exps, f, A);
      const db::BoundReport report =
          db::upper_bound(exps, db::ConstraintTriple::make(exps, f, A, *F));
      exact = report.exact_value;
      upper = report.upper_bound;
      k = report.k;
      if (exact && *exact > *upper) violated = true;
    } catch (const db::SurfaceError&) {
      // Outside the surface's reach for this p: emit the row without values.
    } catch (const db::DomainError&) {
      if (!rF) throw;  // an explicit F that does not form a valid triple
    }
    if (a.format == "csv") {
      std::cout << num(p) << ',' << num(q) << ',' << num(f) << ',' << num(A) << ','
                << opt_num(F) << ',' << num(omega_q) << ',' << opt_num(exact) << ','
                << opt_num(upper) << ',' << opt_num(k) << '\n';
    } else {
      rows.push_back({{"p", p}, {"q", q}, {"f", f}, {"A", A}, {"F", opt_json(F)},
                      {"omega_q", omega_q}, {"exact", opt_json(exact)},
                      {"upper", opt_json(upper)}, {"k", opt_json(k)}});
    }
  };

  for (long ip = 0; ip < rp.steps; ++ip)
    for (long iq = 0; iq < rq.steps; ++iq)
      for (long jf = 0; jf < rf.steps; ++jf)
        for (long iA = 0; iA < rA.steps; ++iA) {
          if (rF) {
            for (long iF = 0; iF < rF->steps; ++iF) {
              emit(rp.at(ip), rq.at(iq), rf.at(jf), rA.at(iA), rF->at(iF));
            }
          } else {
            emit(rp.at(ip), rq.at(iq), rf.at(jf), rA.at(iA), std::nullopt);
          }
        }
  if (a.format == "json") std::cout << rows.dump(2) << '\n';
  return violated ? kPropertyFailure : 0;
}

// ---------------------------------------------------------- convergence

struct ConvergenceArgs {
  double p = 3.0;
  double q = 2.0;
  double f = 1.0;
  double A = 0.0;
  unsigned m = 2;
  unsigned levels = 10;
  unsigned max_depth = 20;
  std::string format = "csv";
};

int cmd_convergence(const ConvergenceArgs& a) {
  const db::Exponents exps = db::Exponents::make(a.p, a.q);
  std::vector<db::MAdicRational> alphas;
  for (unsigned k = 1; k <= a.levels; ++k) alphas.emplace_back(1, k, a.m);
  const auto rows = db::convergence_study(exps, a.f, a.A, alphas, {a.m, a.max_depth});

  if (a.format == "json") {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"alpha", r.alpha.to_string()}, {"z", r.z}, {"F_alpha", r.f_alpha},
                     {"lower_analytic", r.lower_analytic}, {"exact", r.exact}, {"gap", r.gap},
                     {"max_rank", r.max_rank ? json(*r.max_rank) : json(nullptr)},
                     {"depth", r.depth}, {"tree_lower", r.tree_lower},
                     {"tree_maximal", r.tree_maximal}, {"tree_verified", r.tree_verified}});
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "alpha,z,F_alpha,lower_analytic,exact,gap,max_rank,depth,tree_lower,"
                 "tree_maximal,tree_verified\n";
    for (const auto& r : rows) {
      std::cout << num(r.alpha.value()) << ',' << num(r.z) << ',' << num(r.f_alpha) << ','
                << num(r.lower_analytic) << ',' << num(r.exact) << ',' << num(r.gap) << ','
                << (r.max_rank ? std::to_string(*r.max_rank) : "") << ',' << r.depth << ','
                << num(r.tree_lower) << ',' << num(r.tree_maximal) << ','
                << (r.tree_verified ? "true" : "false") << '\n';
    }
  }
  const bool verified = std::all_of(rows.begin(), rows.end(), [](const auto& r) {
    return !r.max_rank || r.tree_verified;
  });
  return db::analytic_column_increasing(rows) && verified ? 0 : kPropertyFailure;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string input;
  std::vector<std::string> pq;
  double tolerance = 1e-9;
};

int cmd_check(const CheckArgs& a) {
  const db::StepFunction phi = db::load_step_function(a.input);
  std::vector<db::Exponents> grid;
  for (const auto& s : a.pq) grid.push_back(parse_pq(s));
  if (grid.empty()) grid = db::default_exponent_grid();

  const db::StepFunction mphi = db::maximal_operator(phi);
  std::cout << "leaves " << phi.size() << "  f " << num(db::integrate(phi, 1.0)) << '\n';
  bool ok = true;
  for (const auto& exps : grid) {
    const auto l41 = db::check_lemma41(phi, exps, a.tolerance);
    const auto weak = db::check_weak_type(phi, exps, a.tolerance);
    const auto dom = db::check_domination(phi, exps, a.tolerance);
    ok = ok && l41.passed && weak.passed && dom.passed;
    std::cout << "p=" << num(exps.p()) << " q=" << num(exps.q()) << '\n'
              << "  lemma41 " << (l41.passed ? "PASS" : "FAIL") << "  lhs " << num(l41.lhs)
              << "  rhs " << num(l41.rhs) << '\n'
              << "  weak-type " << (weak.passed ? "PASS" : "FAIL") << "  levels "
              << weak.levels_checked << '\n'
              << "  domination " << (dom.passed ? "PASS" : "FAIL") << "  integral "
              << num(dom.integral) << "  upper " << num(dom.bound.upper_bound) << '\n';
  }
  return ok ? 0 : kPropertyFailure;
}

// -------------------------------------------------------------- maximal

struct MaximalArgs {
  std::string input;
  std::string output;
};

int cmd_maximal(const MaximalArgs& a) {
  const db::StepFunction mphi = db::maximal_operator(db::load_step_function(a.input));
  if (a.output.empty()) {
    db::write_step_function(std::cout, mphi);
  } else {
    db::save_step_function(a.output, mphi);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bellman function of the dyadic maximal operator: exact values on the critical "
               "surface, upper bounds, extremal constructions and verification suites"};
  app.require_subcommand(1);

  OmegaArgs omega_args;
  auto* omega = app.add_subcommand("omega", "omega_p(tau) = H_p^{-1}(tau) and its H_p residual");
  omega->add_option("--p", omega_args.p, "exponent p > 1")->required();
  omega->add_option("--tau", omega_args.tau, "tau in [0, 1]")->required();
  omega->add_flag("--json", omega_args.json, "JSON output");

  BellmanArgs bellman_args;
  std::optional<double> bellman_F;
  auto* bellman = app.add_subcommand(
      "bellman", "critical F(f, A), exact value and upper bound at the surface triple");
  bellman->add_option("--p", bellman_args.p, "exponent p")->required();
  bellman->add_option("--q", bellman_args.q, "exponent q, 1 < q < p")->required();
  bellman->add_option("--f", bellman_args.f, "integral of phi")->required();
  bellman->add_option("--A", bellman_args.A, "integral of phi^q")->required();
  bellman->add_option("--F", bellman_F, "integral of phi^p; default: the critical-surface F");
  bellman->add_flag("--json", bellman_args.json, "JSON output");

  ExtremalArgs extremal_args;
  auto* extremal =
      app.add_subcommand("extremal", "build the truncated extremal function on a tree and verify it");
  extremal->add_option("--p", extremal_args.p, "exponent p")->required();
  extremal->add_option("--q", extremal_args.q, "exponent q")->required();
  extremal->add_option("--f", extremal_args.f, "integral of phi")->required();
  extremal->add_option("--A", extremal_args.A, "integral of phi^q")->required();
  extremal->add_option("--alpha", extremal_args.alpha, "alpha as j/m^k, e.g. 1/8")->required();
  extremal->add_option("--depth", extremal_args.depth, "tree depth, >= k (max-rank + 1)")->required();
  extremal->add_option("--max-rank", extremal_args.max_rank, "last rank kept")->required();
  extremal->add_option("--m", extremal_args.m, "tree branching")->capture_default_str();
  extremal->add_option("--dump", extremal_args.dump, "write the step function here");
  extremal->add_option("--sidecar", extremal_args.sidecar, "write (rank level index x_I) here");
  extremal->add_flag("--json", extremal_args.json, "JSON output");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "randomized property suites on step functions");
  verify->add_option("--suite", verify_args.suite,
                     "lemma41 | weak-type | domination | brute-force | all")
      ->capture_default_str();
  verify->add_option("--trials", verify_args.trials, "random functions")->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "seed")->capture_default_str();
  verify->add_option("--depth", verify_args.depth, "max tree depth")->capture_default_str();
  verify->add_option("--m", verify_args.m, "tree branching")->capture_default_str();
  verify->add_option("--pq", verify_args.pq, "exponent pair p,q (repeatable)");
  verify->add_option("--tolerance", verify_args.tolerance, "relative tolerance")
      ->capture_default_str();
  verify->add_option("--threads", verify_args.threads, "worker threads, 0 = all cores");
  verify->add_option("--out", verify_args.out, "directory for failing functions");
  verify->add_flag("--json", verify_args.json, "JSON output");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep",
      "tables over (p, q, f, A) on the critical surface, or over (f, A, F) with --F.\n"
      "Each of --p --q --f --A --F takes v or lo:hi:n.\n"
      "CSV columns: p,q,f,A,F,omega_q,exact,upper,k\n"
      "  omega_q = omega_q(f^q/A); exact = Bellman value (empty off the surface);\n"
      "  upper = F h^{-1}(k)^p; k = (p f^{p-q} A - (p-q) f^p)/F.\n"
      "Rows whose (f, A) has no critical F are emitted with empty value columns.");
  sweep->add_option("--p", sweep_args.p, "p or range")->capture_default_str();
  sweep->add_option("--q", sweep_args.q, "q or range")->capture_default_str();
  sweep->add_option("--f", sweep_args.f, "f or range")->capture_default_str();
  sweep->add_option("--A", sweep_args.A, "A or range")->required();
  sweep->add_option("--F", sweep_args.F, "F or range (off-surface mode)");
  sweep->add_option("--format", sweep_args.format, "csv | json")->capture_default_str();

  ConvergenceArgs conv_args;
  auto* conv = app.add_subcommand(
      "convergence", "lower bounds z^p F(alpha) for alpha = m^-1 .. m^-levels, with tree checks");
  conv->add_option("--p", conv_args.p, "exponent p")->required();
  conv->add_option("--q", conv_args.q, "exponent q")->required();
  conv->add_option("--f", conv_args.f, "integral of phi")->required();
  conv->add_option("--A", conv_args.A, "integral of phi^q")->required();
  conv->add_option("--m", conv_args.m, "tree branching")->capture_default_str();
  conv->add_option("--levels", conv_args.levels, "number of alphas")->capture_default_str();
  conv->add_option("--max-depth", conv_args.max_depth, "deepest tree used")->capture_default_str();
  conv->add_option("--format", conv_args.format, "csv | json")->capture_default_str();

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "run every inequality check on a step-function file");
  check->add_option("--input", check_args.input, "step-function file")->required();
  check->add_option("--pq", check_args.pq, "exponent pair p,q (repeatable)");
  check->add_option("--tolerance", check_args.tolerance, "relative tolerance")
      ->capture_default_str();

  MaximalArgs maximal_args;
  auto* maximal = app.add_subcommand("maximal", "apply the maximal operator to a step-function file");
  maximal->add_option("--input", maximal_args.input, "step-function file")->required();
  maximal->add_option("--output", maximal_args.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kArgumentError;
  }

  try {
    if (*omega) return cmd_omega(omega_args);
    if (*bellman) {
      bellman_args.F = bellman_F;
      return cmd_bellman(bellman_args);
    }
    if (*extremal) return cmd_extremal(extremal_args);
    if (*verify) return cmd_verify(verify_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*conv) return cmd_convergence(conv_args);
    if (*check) return cmd_check(check_args);
    if (*maximal) return cmd_maximal(maximal_args);
  } catch (const db::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return db::exit_code(e.kind());
  }
  return kArgumentError;
}
