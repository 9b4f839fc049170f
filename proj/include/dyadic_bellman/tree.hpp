#pragma once

// Finite homogeneous m-adic measure trees and step functions on their
// leaves. A tree of depth D has m^level cells at each level, each of
// measure m^{-level}; a step function is one nonnegative value per leaf in
// level order. For such functions the tree maximal operator
//
//     Mφ(x) = max { average of φ over I : x ∈ I, I a cell }
//
// is determined by the D + 1 ancestors of each leaf and is computed exactly.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dyadic_bellman/errors.hpp"
#include "dyadic_bellman/madic.hpp"

namespace dyadic_bellman {

/// Leaf-count cap: depth 24 binary trees.
inline constexpr std::uint64_t kMaxLeaves = std::uint64_t{1} << 24;

struct NodeAddress {
  unsigned level = 0;
  std::uint64_t index = 0;
  friend bool operator==(const NodeAddress&, const NodeAddress&) = default;
};

/// Half-open range of leaf indices.
struct LeafRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t size() const noexcept { return end - begin; }
  friend bool operator==(const LeafRange&, const LeafRange&) = default;
};

class MAdicTree {
 public:
  /// Throws DomainError for m < 2, CapacityError beyond kMaxLeaves.
  MAdicTree(unsigned branching, unsigned depth);

  unsigned branching() const noexcept { return m_; }
  unsigned depth() const noexcept { return depth_; }
  std::uint64_t leaf_count() const noexcept { return leaves_; }
  std::uint64_t level_size(unsigned level) const;
  /// Leaves below one cell of the given level: m^{D - level}.
  std::uint64_t leaves_under(unsigned level) const;

  /// μ(I) = m^{-level}, exact.
  MAdicRational node_measure(unsigned level) const;
  /// Exact measure of `count` leaves.
  MAdicRational leaf_measure(std::uint64_t count) const;

  LeafRange leaves_of(NodeAddress node) const;
  /// Parent of a non-root cell.
  NodeAddress parent(NodeAddress node) const;

  friend bool operator==(const MAdicTree&, const MAdicTree&) = default;

 private:
  unsigned m_;
  unsigned depth_;
  std::uint64_t leaves_;
};

class StepFunction {
 public:
  /// Throws DomainError if the size differs from the leaf count or a value
  /// is negative or not finite.
  StepFunction(MAdicTree tree, std::vector<double> values);
  static StepFunction constant(MAdicTree tree, double c);

  const MAdicTree& tree() const noexcept { return tree_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t leaf) const { return values_[leaf]; }

  bool is_constant() const noexcept;
  bool is_zero() const noexcept;

 private:
  MAdicTree tree_;
  std::vector<double> values_;
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Subtree sums of φ for every cell, accumulated bottom-up.
class NodeSums {
 public:
  explicit NodeSums(const StepFunction& phi);

  double sum(NodeAddress node) const { return levels_[node.level][node.index]; }
  /// (1/μ(I)) ∫_I φ dμ.
  double average(NodeAddress node) const;
  const MAdicTree& tree() const noexcept { return tree_; }

 private:
  MAdicTree tree_;
  std::vector<std::vector<double>> levels_;
};

/// ∫ φ^r dμ with compensated accumulation; r >= 1.
double integrate(const StepFunction& phi, double r);

/// ∫ a^{ra} b^{rb} dμ on a common tree; ra, rb >= 0 (0^0 = 1).
double integrate_product(const StepFunction& a, double ra, const StepFunction& b, double rb);

/// Mφ on leaves, one top-down pass over prefix maxima of cell averages.
StepFunction maximal_operator(const StepFunction& phi);

/// Number of leaves with Mφ >= λ (closed level set).
std::uint64_t level_set_count(const StepFunction& mphi, double lambda);

/// μ({Mφ >= λ}).
double level_set_measure(const StepFunction& mphi, double lambda);

/// ∫_{Mφ >= λ} φ^r dμ.
double integrate_over_level_set(const StepFunction& phi, double r, const StepFunction& mphi,
                                double lambda);

// Text format: a header line "m D", then one value per leaf in level order.
void write_step_function(std::ostream& out, const StepFunction& phi);
StepFunction read_step_function(std::istream& in);
void save_step_function(const std::string& path, const StepFunction& phi);
StepFunction load_step_function(const std::string& path);

}  // namespace dyadic_bellman
