#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "conflict_lab/truth_table.hpp"

namespace clab {

/*
 * Deterministic decision tree stored as a node arena. An internal node
 * queries one variable and has a 0-child and a 1-child; a leaf outputs a
 * bit. Trees are reduced: no variable is queried twice on a root-to-leaf
 * path. The constructors enforce this.
 *
 * Text form (x1-based, children in 0/1 order):
 *
 *   tree := "0" | "1" | "(" "x" index " " tree " " tree ")"
 *
 * e.g. "(x1 (x2 0 1) 1)" is OR:2 queried x1 first.
 */
class DecisionTree {
 public:
  using NodeId = std::uint32_t;

  struct Node {
    int var = -1;  // -1 marks a leaf
    bool output = false;
    NodeId zero = 0;
    NodeId one = 0;
    std::uint32_t vars_below = 0;  // variables queried in this subtree

    bool is_leaf() const { return var < 0; }
  };

  static DecisionTree leaf(bool output);
  /// Throws DomainError if `var` is queried anywhere in either subtree.
  static DecisionTree query(int var, const DecisionTree& zero, const DecisionTree& one);

  NodeId root() const { return static_cast<NodeId>(nodes_.size() - 1); }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t node_count() const { return nodes_.size(); }

  /// Number of internal nodes on the longest root-to-leaf path.
  int depth() const;
  /// Largest queried variable index plus one (0 for a bare leaf).
  int min_arity() const;

  std::string to_string() const;
  /// Throws ParseError on malformed text, DomainError on repeated variables.
  static DecisionTree parse(std::string_view text);

  friend bool operator==(const DecisionTree& a, const DecisionTree& b) {
    return a.to_string() == b.to_string();
  }

 private:
  NodeId append(const DecisionTree& other);

  std::vector<Node> nodes_{Node{}};  // default: leaf 0
};

/// True iff every input reaches a leaf labelled f(x). Throws DomainError
/// when the tree queries a variable outside the table's arity.
bool validate(const DecisionTree& tree, const TruthTable& t);

/// Internal nodes visited by x, root first.
std::vector<DecisionTree::NodeId> path_of(const DecisionTree& tree, const Point& x);

/// Arity cap for exhaustive tree enumeration.
inline constexpr int kEnumerateMaxArity = 3;

/*
 * Calls `visit` once for every reduced tree computing t that never queries
 * inside a constant subcube. Order: root variable ascending, then the
 * 0-subtree enumeration, then the 1-subtree enumeration. Throws ArityError
 * above kEnumerateMaxArity.
 */
void for_each_tree(const TruthTable& t, const std::function<void(const DecisionTree&)>& visit);
std::vector<DecisionTree> enumerate_trees(const TruthTable& t);

/// Valid tree for t restricted to s that queries the lowest free variable
/// until the subcube is constant.
DecisionTree lowest_index_tree(const TruthTable& t, const Subcube& s);

}  // namespace clab
