#include "conflict_lab/trees.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "conflict_lab/error.hpp"

namespace clab {

DecisionTree DecisionTree::leaf(bool output) {
  DecisionTree t;
  t.nodes_.front().output = output;
  return t;
}

DecisionTree::NodeId DecisionTree::append(const DecisionTree& other) {
  const auto offset = static_cast<NodeId>(nodes_.size());
  for (Node n : other.nodes_) {
    if (!n.is_leaf()) {
      n.zero += offset;
      n.one += offset;
    }
    nodes_.push_back(n);
  }
  return offset + other.root();
}

DecisionTree DecisionTree::query(int var, const DecisionTree& zero, const DecisionTree& one) {
  if (var < 0 || var >= kMaxArity) throw DomainError("queried variable out of range");
  const std::uint32_t below = zero.node(zero.root()).vars_below | one.node(one.root()).vars_below;
  if ((below >> var) & 1u) {
    throw DomainError("variable x" + std::to_string(var + 1) + " repeats on a root-to-leaf path");
  }
  DecisionTree t;
  t.nodes_.clear();
  t.nodes_.reserve(zero.nodes_.size() + one.nodes_.size() + 1);
  const NodeId z = t.append(zero);
  const NodeId o = t.append(one);
  t.nodes_.push_back(Node{var, false, z, o, below | (1u << var)});
  return t;
}

int DecisionTree::depth() const {
  std::vector<int> d(nodes_.size(), 0);
  // Children always precede their parent in the arena.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (!n.is_leaf()) d[i] = 1 + std::max(d[n.zero], d[n.one]);
  }
  return d[root()];
}

int DecisionTree::min_arity() const {
  return std::bit_width(node(root()).vars_below);
}

std::string DecisionTree::to_string() const {
  std::string out;
  std::function<void(NodeId)> emit = [&](NodeId id) {
    const Node& n = nodes_[id];
    if (n.is_leaf()) {
      out.push_back(n.output ? '1' : '0');
      return;
    }
    out += "(x" + std::to_string(n.var + 1) + " ";
    emit(n.zero);
    out.push_back(' ');
    emit(n.one);
    out.push_back(')');
  };
  emit(root());
  return out;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  DecisionTree parse() {
    DecisionTree t = parse_tree();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("bad tree '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                     ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  DecisionTree parse_tree() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      return DecisionTree::leaf(c == '1');
    }
    if (c != '(') fail("expected '(', '0' or '1'");
    ++pos_;
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != 'x') fail("expected variable 'x<i>'");
    ++pos_;
    int var = 0;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      var = var * 10 + (text_[pos_] - '0');
      if (var > kMaxArity) fail("variable index too large");
      ++pos_;
    }
    if (pos_ == start || var < 1) fail("bad variable index");
    DecisionTree zero = parse_tree();
    DecisionTree one = parse_tree();
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return DecisionTree::query(var - 1, zero, one);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DecisionTree DecisionTree::parse(std::string_view text) { return TreeParser(text).parse(); }

bool validate(const DecisionTree& tree, const TruthTable& t) {
  if (tree.min_arity() > t.arity()) {
    throw DomainError("tree queries a variable beyond arity " + std::to_string(t.arity()));
  }
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    DecisionTree::NodeId id = tree.root();
    while (!tree.node(id).is_leaf()) {
      const auto& n = tree.node(id);
      id = ((idx >> n.var) & 1u) ? n.one : n.zero;
    }
    if (tree.node(id).output != t.at(idx)) return false;
  }
  return true;
}

std::vector<DecisionTree::NodeId> path_of(const DecisionTree& tree, const Point& x) {
  std::vector<DecisionTree::NodeId> path;
  DecisionTree::NodeId id = tree.root();
  while (!tree.node(id).is_leaf()) {
    path.push_back(id);
    const auto& n = tree.node(id);
    id = x[n.var] ? n.one : n.zero;
  }
  return path;
}

namespace {

std::vector<DecisionTree> trees_on(const TruthTable& t, const Subcube& s) {
  switch (constant_on(t, s)) {
    case Constancy::kConst0:
      return {DecisionTree::leaf(false)};
    case Constancy::kConst1:
      return {DecisionTree::leaf(true)};
    case Constancy::kNonconstant:
      break;
  }
  std::vector<DecisionTree> out;
  for (int var = 0; var < t.arity(); ++var) {
    if (!s.is_free(var)) continue;
    const auto zeros = trees_on(t, s.restrict(var, false));
    const auto ones = trees_on(t, s.restrict(var, true));
    for (const auto& z : zeros) {
      for (const auto& o : ones) out.push_back(DecisionTree::query(var, z, o));
    }
  }
  return out;
}

}  // namespace

void for_each_tree(const TruthTable& t, const std::function<void(const DecisionTree&)>& visit) {
  for (const auto& tree : enumerate_trees(t)) visit(tree);
}

std::vector<DecisionTree> enumerate_trees(const TruthTable& t) {
  if (t.arity() > kEnumerateMaxArity) {
    throw ArityError("tree enumeration supports arity <= " + std::to_string(kEnumerateMaxArity));
  }
  return trees_on(t, Subcube::full(t.arity()));
}

DecisionTree lowest_index_tree(const TruthTable& t, const Subcube& s) {
  switch (constant_on(t, s)) {
    case Constancy::kConst0:
      return DecisionTree::leaf(false);
    case Constancy::kConst1:
      return DecisionTree::leaf(true);
    case Constancy::kNonconstant:
      break;
  }
  const int var = std::countr_zero(s.free_mask());
  return DecisionTree::query(var, lowest_index_tree(t, s.restrict(var, false)),
                             lowest_index_tree(t, s.restrict(var, true)));
}

}  // namespace clab
