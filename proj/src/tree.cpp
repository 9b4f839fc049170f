#include "dyadic_bellman/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dyadic_bellman {

namespace {

double power(double v, double r) {
  if (r == 1.0) return v;
  if (r == 2.0) return v * v;
  return std::pow(v, r);
}

void require_same_tree(const StepFunction& a, const StepFunction& b) {
  if (!(a.tree() == b.tree())) throw DomainError("step functions live on different trees");
}

}  // namespace

MAdicTree::MAdicTree(unsigned branching, unsigned depth) : m_(branching), depth_(depth) {
  if (branching < 2) throw DomainError("tree branching must be >= 2");
  std::uint64_t leaves = 1;
  for (unsigned i = 0; i < depth; ++i) {
    leaves *= branching;
    if (leaves > kMaxLeaves) {
      throw CapacityError("tree " + std::to_string(branching) + "^" + std::to_string(depth) +
                          " exceeds the leaf cap of " + std::to_string(kMaxLeaves));
    }
  }
  leaves_ = leaves;
}

std::uint64_t MAdicTree::level_size(unsigned level) const {
  if (level > depth_) throw DomainError("level beyond tree depth");
  return checked_pow(m_, level);
}

std::uint64_t MAdicTree::leaves_under(unsigned level) const {
  if (level > depth_) throw DomainError("level beyond tree depth");
  return checked_pow(m_, depth_ - level);
}

MAdicRational MAdicTree::node_measure(unsigned level) const { return MAdicRational(1, level, m_); }

MAdicRational MAdicTree::leaf_measure(std::uint64_t count) const {
  return MAdicRational(count, depth_, m_);
}

LeafRange MAdicTree::leaves_of(NodeAddress node) const {
  const std::uint64_t width = leaves_under(node.level);
  if (node.index >= level_size(node.level)) throw DomainError("node index out of range");
  return {node.index * width, (node.index + 1) * width};
}

NodeAddress MAdicTree::parent(NodeAddress node) const {
  if (node.level == 0) throw DomainError("the root has no parent");
  return {node.level - 1, node.index / m_};
}

StepFunction::StepFunction(MAdicTree tree, std::vector<double> values)
    : tree_(tree), values_(std::move(values)) {
  if (values_.size() != tree_.leaf_count()) {
    throw DomainError("step function has " + std::to_string(values_.size()) +
                      " values for a tree with " + std::to_string(tree_.leaf_count()) +
                      " leaves");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && std::isfinite(v))) {
      throw DomainError("step function values must be finite and nonnegative");
    }
  }
}

StepFunction StepFunction::constant(MAdicTree tree, double c) {
  return StepFunction(tree, std::vector<double>(tree.leaf_count(), c));
}

bool StepFunction::is_constant() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [first = values_.front()](double v) { return v == first; });
}

bool StepFunction::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    carry_ += (sum_ - t) + v;
  } else {
    carry_ += (v - t) + sum_;
  }
  sum_ = t;
}

NodeSums::NodeSums(const StepFunction& phi) : tree_(phi.tree()) {
  const unsigned depth = tree_.depth();
  const unsigned m = tree_.branching();
  levels_.resize(depth + 1);
  levels_[depth].assign(phi.values().begin(), phi.values().end());
  for (unsigned level = depth; level-- > 0;) {
    const auto& below = levels_[level + 1];
    auto& here = levels_[level];
    here.resize(below.size() / m);
    for (std::size_t i = 0; i < here.size(); ++i) {
      double s = 0.0;
      for (unsigned c = 0; c < m; ++c) s += below[i * m + c];
      here[i] = s;
    }
  }
}

double NodeSums::average(NodeAddress node) const {
  return sum(node) / static_cast<double>(tree_.leaves_under(node.level));
}

double integrate(const StepFunction& phi, double r) {
  if (!(r >= 1.0)) throw DomainError("integrate needs r >= 1");
  CompensatedSum acc;
  for (double v : phi.values()) acc.add(power(v, r));
  return acc.value() / static_cast<double>(phi.tree().leaf_count());
}

double integrate_product(const StepFunction& a, double ra, const StepFunction& b, double rb) {
  require_same_tree(a, b);
  if (!(ra >= 0.0 && rb >= 0.0)) throw DomainError("integrate_product needs nonnegative powers");
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(power(a[i], ra) * power(b[i], rb));
  return acc.value() / static_cast<double>(a.tree().leaf_count());
}

StepFunction maximal_operator(const StepFunction& phi) {
  const MAdicTree& tree = phi.tree();
  const NodeSums sums(phi);
  const unsigned m = tree.branching();

  // best[i] at level l: max of the averages over the cell and its ancestors.
  std::vector<double> best{sums.average({0, 0})};
  for (unsigned level = 1; level <= tree.depth(); ++level) {
    const double width = static_cast<double>(tree.leaves_under(level));
    std::vector<double> next(best.size() * m);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = std::max(best[i / m], sums.sum({level, i}) / width);
    }
    best = std::move(next);
  }
  return StepFunction(tree, std::move(best));
}

std::uint64_t level_set_count(const StepFunction& mphi, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("level set needs lambda >= 0");
  return static_cast<std::uint64_t>(
      std::count_if(mphi.values().begin(), mphi.values().end(),
                    [lambda](double v) { return v >= lambda; }));
}

double level_set_measure(const StepFunction& mphi, double lambda) {
  return mphi.tree().leaf_measure(level_set_count(mphi, lambda)).value();
}

double integrate_over_level_set(const StepFunction& phi, double r, const StepFunction& mphi,
                                double lambda) {
  require_same_tree(phi, mphi);
  if (!(lambda >= 0.0)) throw DomainError("level set needs lambda >= 0");
  CompensatedSum acc;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (mphi[i] >= lambda) acc.add(power(phi[i], r));
  }
  return acc.value() / static_cast<double>(phi.tree().leaf_count());
}

void write_step_function(std::ostream& out, const StepFunction& phi) {
  out << phi.tree().branching() << ' ' << phi.tree().depth() << '\n';
  char buf[32];
  for (double v : phi.values()) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
    out.put('\n');
  }
}

StepFunction read_step_function(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("step function file: missing header");
  std::istringstream header(line);
  long long m = 0;
  long long depth = -1;
  if (!(header >> m >> depth) || m < 2 || depth < 0 || depth > 64) {
    throw DomainError("step function file: header must be 'm D' with m >= 2, D >= 0");
  }
  MAdicTree tree(static_cast<unsigned>(m), static_cast<unsigned>(depth));

  std::vector<double> values;
  values.reserve(tree.leaf_count());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    double v = 0.0;
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
      throw DomainError("step function file: bad value on line " + std::to_string(line_no));
    }
    values.push_back(v);
  }
  return StepFunction(tree, std::move(values));
}

void save_step_function(const std::string& path, const StepFunction& phi) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  write_step_function(out, phi);
}

StepFunction load_step_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  return read_step_function(in);
}

}  // namespace dyadic_bellman
