#include "conflict_lab/conflict.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "conflict_lab/error.hpp"

namespace clab {

namespace {

void require_nonconstant(const TruthTable& t) {
  if (t.is_constant()) {
    throw DomainError("function " + serialize(t) + " is constant; no distribution pair exists");
  }
}

void check_side(const TruthTable& t, const std::map<std::uint32_t, Rational>& side, bool value,
                const char* name) {
  Rational total = 0;
  for (const auto& [idx, w] : side) {
    if (idx >= t.size()) throw DomainError(std::string(name) + " has a point outside the cube");
    if (sgn(w) < 0) throw DomainError(std::string(name) + " has a negative weight");
    if (sgn(w) > 0 && t.at(idx) != value) {
      throw DomainError(std::string(name) + " puts mass on " + Point{idx, t.arity()}.to_string() +
                        " where f = " + (value ? "0" : "1"));
    }
    total += w;
  }
  if (total != 1) throw DomainError(std::string(name) + " sums to " + to_string(total) + ", not 1");
}

std::map<std::uint32_t, Rational> restrict_side(const std::map<std::uint32_t, Rational>& side,
                                                const Subcube& cube) {
  std::map<std::uint32_t, Rational> out;
  Rational total = 0;
  for (const auto& [idx, w] : side) {
    if (sgn(w) > 0 && cube.contains(idx)) {
      out.emplace(idx, w);
      total += w;
    }
  }
  for (auto& [idx, w] : out) w /= total;
  return out;
}

Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? Rational(b - a) : Rational(a - b); }

}  // namespace

void check_pair(const TruthTable& t, const DistributionPair& pair) {
  if (pair.arity != t.arity()) throw DomainError("distribution pair arity does not match table");
  check_side(t, pair.mu0, false, "mu0");
  check_side(t, pair.mu1, true, "mu1");
}

ConditionalView condition(const DistributionPair& pair, const Subcube& cube) {
  if (cube.arity() != pair.arity) throw DomainError("subcube arity does not match pair");
  ConditionalView view{cube, restrict_side(pair.mu0, cube), restrict_side(pair.mu1, cube), false, false};
  view.zero_mass0 = view.mu0.empty();
  view.zero_mass1 = view.mu1.empty();
  return view;
}

AlphaBeta alpha_beta(const ConditionalView& view, int var) {
  if (view.zero_mass0 || view.zero_mass1) {
    throw DomainError("alpha/beta undefined on subcube " + view.cube.to_string() + ": zero-mass side");
  }
  if (var < 0 || var >= view.cube.arity() || !view.cube.is_free(var)) {
    throw DomainError("variable x" + std::to_string(var + 1) + " is not free in " + view.cube.to_string());
  }
  auto zero_mass = [var](const std::map<std::uint32_t, Rational>& side) {
    Rational m = 0;
    for (const auto& [idx, w] : side) {
      if (((idx >> var) & 1u) == 0) m += w;
    }
    return m;
  };
  return {zero_mass(view.mu0), zero_mass(view.mu1)};
}

WalkStats walk_stats(const TruthTable& t, const DistributionPair& pair, const DecisionTree& tree) {
  require_nonconstant(t);
  check_pair(t, pair);
  if (!validate(tree, t)) throw DomainError("tree " + tree.to_string() + " does not compute " + serialize(t));

  WalkStats stats;
  stats.stopping_time.assign(static_cast<std::size_t>(tree.depth()), Rational(0));

  std::function<void(DecisionTree::NodeId, const Subcube&, const Rational&, int)> visit =
      [&](DecisionTree::NodeId id, const Subcube& cube, const Rational& reach, int position) {
        const auto& node = tree.node(id);
        if (node.is_leaf()) {
          if (sgn(reach) != 0) throw std::logic_error("random walk reached a leaf with positive probability");
          return;
        }
        NodeWalk w;
        w.node = id;
        w.var = node.var;
        w.position = position;
        w.cube = cube;
        w.reach = reach;
        const ConditionalView view = condition(pair, cube);
        if (view.zero_mass0 || view.zero_mass1) {
          if (sgn(reach) != 0) throw std::logic_error("walk reached a node with a zero-mass side");
        } else {
          w.ab = alpha_beta(view, node.var);
          const auto& [a, b] = *w.ab;
          w.to_zero = std::min(a, b);
          w.to_one = 1 - std::max(a, b);
          w.stop_here = abs_diff(a, b);
          w.stop = reach * w.stop_here;
        }
        stats.stopping_time[static_cast<std::size_t>(position - 1)] += w.stop;
        const Rational zero_reach = reach * w.to_zero;
        const Rational one_reach = reach * w.to_one;
        stats.nodes.push_back(std::move(w));
        visit(node.zero, cube.restrict(node.var, false), zero_reach, position + 1);
        visit(node.one, cube.restrict(node.var, true), one_reach, position + 1);
      };
  visit(tree.root(), Subcube::full(t.arity()), Rational(1), 1);

  stats.expectation = 0;
  for (std::size_t r = 0; r < stats.stopping_time.size(); ++r) {
    stats.expectation += static_cast<long>(r + 1) * stats.stopping_time[r];
  }
  return stats;
}

std::string to_string(Provenance p) { return p == Provenance::kWitness ? "witness" : "heuristic"; }

namespace {

struct WeightedPoint {
  std::uint32_t idx;
  Integer weight;
};
using PointList = std::vector<WeightedPoint>;

// Scales a side to positive integer weights over a common denominator.
PointList integer_weights(const std::map<std::uint32_t, Rational>& side) {
  Integer lcm = 1;
  for (const auto& [idx, w] : side) {
    if (sgn(w) > 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.get_den().get_mpz_t());
  }
  PointList out;
  for (const auto& [idx, w] : side) {
    if (sgn(w) > 0) out.push_back({idx, w.get_num() * (lcm / w.get_den())});
  }
  return out;
}

PointList split(const PointList& pts, int var, bool value) {
  PointList out;
  for (const auto& p : pts) {
    if (((p.idx >> var) & 1u) == static_cast<unsigned>(value)) out.push_back(p);
  }
  return out;
}

Integer mass_with_zero(const PointList& pts, int var) {
  Integer m = 0;
  for (const auto& p : pts) {
    if (((p.idx >> var) & 1u) == 0) m += p.weight;
  }
  return m;
}

class ConflictDP {
 public:
  explicit ConflictDP(const TruthTable& t) : t_(t) {}

  Rational solve(const Subcube& cube, const PointList& p0, const PointList& p1) {
    if (auto it = memo_.find(cube.key()); it != memo_.end()) return it->second.cost;
    Integer m0 = 0, m1 = 0;
    for (const auto& p : p0) m0 += p.weight;
    for (const auto& p : p1) m1 += p.weight;

    Entry best{Rational(0), -1};
    for (int var = 0; var < t_.arity(); ++var) {
      if (!cube.is_free(var)) continue;
      const Rational alpha = make_rational(mass_with_zero(p0, var), m0);
      const Rational beta = make_rational(mass_with_zero(p1, var), m1);
      const Rational to_zero = std::min(alpha, beta);
      const Rational to_one = 1 - std::max(alpha, beta);
      Rational cost = 1;
      if (sgn(to_zero) > 0) cost += to_zero * child(cube.restrict(var, false), p0, p1, var, false);
      if (sgn(to_one) > 0) cost += to_one * child(cube.restrict(var, true), p0, p1, var, true);
      if (best.var < 0 || cost < best.cost) best = Entry{cost, var};
    }
    if (best.var < 0) throw std::logic_error("both sides have mass on a subcube with no free variable");
    return memo_.emplace(cube.key(), std::move(best)).first->second.cost;
  }

  DecisionTree extract(const Subcube& cube) const {
    auto it = memo_.find(cube.key());
    if (it == memo_.end()) return lowest_index_tree(t_, cube);
    const int var = it->second.var;
    return DecisionTree::query(var, extract(cube.restrict(var, false)), extract(cube.restrict(var, true)));
  }

 private:
  struct Entry {
    Rational cost;
    int var;
  };

  Rational child(const Subcube& cube, const PointList& p0, const PointList& p1, int var, bool value) {
    if (auto it = memo_.find(cube.key()); it != memo_.end()) return it->second.cost;
    return solve(cube, split(p0, var, value), split(p1, var, value));
  }

  const TruthTable& t_;
  std::unordered_map<std::uint64_t, Entry> memo_;
};

}  // namespace

ChiBound min_expected_conflict(const TruthTable& t, const DistributionPair& pair) {
  require_nonconstant(t);
  if (t.arity() > kConflictMaxArity) {
    throw ArityError("min_expected_conflict supports arity <= " + std::to_string(kConflictMaxArity));
  }
  check_pair(t, pair);
  ConflictDP dp(t);
  const Subcube root = Subcube::full(t.arity());
  ChiBound out;
  out.table = t;
  out.pair = pair;
  out.value = dp.solve(root, integer_weights(pair.mu0), integer_weights(pair.mu1));
  out.tree = dp.extract(root);
  out.provenance = Provenance::kWitness;
  return out;
}

DistributionPair witness_pair(const TruthTable& t, const BlockPacking& packing) {
  require_nonconstant(t);
  if (packing.base.arity != t.arity()) throw DomainError("packing arity does not match table");
  if (packing.blocks.empty()) throw DomainError("witness packing has no sensitive blocks");
  const Point& z = packing.base;
  const bool fz = t.eval(z);
  DistributionPair pair;
  pair.arity = t.arity();
  auto& point_side = fz ? pair.mu1 : pair.mu0;
  auto& flip_side = fz ? pair.mu0 : pair.mu1;
  point_side[z.bits] = 1;
  const Rational share(1, static_cast<unsigned long>(packing.blocks.size()));
  for (std::uint32_t b : packing.blocks) {
    if (b == 0 || t.at(z.bits ^ b) == fz) throw DomainError("packing contains a non-sensitive block");
    if (!flip_side.emplace(z.bits ^ b, share).second) throw DomainError("packing blocks are not distinct");
  }
  check_pair(t, pair);
  return pair;
}

DistributionPair witness_pair(const TruthTable& t) {
  require_nonconstant(t);
  if (t.arity() > kConflictMaxArity) {
    throw ArityError("witness_pair supports arity <= " + std::to_string(kConflictMaxArity));
  }
  return witness_pair(t, block_sensitivity(t).witness);
}

ZPathReport zpath_analysis(const TruthTable& t, const DecisionTree& tree) {
  require_nonconstant(t);
  return zpath_analysis(t, tree, block_sensitivity(t).witness);
}

ZPathReport zpath_analysis(const TruthTable& t, const DecisionTree& tree, const BlockPacking& packing) {
  const DistributionPair pair = witness_pair(t, packing);
  const WalkStats stats = walk_stats(t, pair, tree);
  auto fail = [&](const std::string& what) {
    throw std::logic_error("z-path identity violated for " + serialize(t) + " on " + tree.to_string() +
                           ": " + what);
  };

  ZPathReport report;
  report.z = packing.base;
  report.k = packing.size();
  report.blocks = packing.blocks;
  const Rational one_over_k(1, static_cast<unsigned long>(report.k));

  std::uint32_t queried = 0;
  Rational total = 0;
  for (DecisionTree::NodeId id : path_of(tree, report.z)) {
    const auto it = std::find_if(stats.nodes.begin(), stats.nodes.end(),
                                 [id](const NodeWalk& w) { return w.node == id; });
    const NodeWalk& w = *it;
    ZPathNode node;
    node.node = id;
    node.var = w.var;
    node.position = w.position;
    std::uint32_t active_union = 0;
    for (std::uint32_t b : packing.blocks) {
      if ((b & queried) == 0) {
        ++node.active;
        active_union |= b;
      }
    }
    node.hits_active = ((active_union >> w.var) & 1u) != 0;
    node.stop_here = w.stop_here;
    node.reach = w.reach;
    node.stop = w.stop;

    const Rational expected_stop_here =
        node.hits_active ? Rational(1, static_cast<unsigned long>(node.active)) : Rational(0);
    if (node.stop_here != expected_stop_here) fail("stop probability at x" + std::to_string(w.var + 1));
    if (node.reach != make_rational(node.active, report.k)) fail("reach probability at x" + std::to_string(w.var + 1));
    if (sgn(node.stop) != 0 && node.stop != one_over_k) fail("Pr[X=r] not in {0, 1/k}");
    if (stats.stopping_time[static_cast<std::size_t>(node.position - 1)] != node.stop) {
      fail("walk leaves z's path at position " + std::to_string(node.position));
    }
    total += node.stop;
    report.expectation += node.position * node.stop;
    queried |= 1u << w.var;
    report.nodes.push_back(std::move(node));
  }
  if (total != 1) fail("stop mass along z's path is " + to_string(total));
  if (report.expectation != stats.expectation) fail("expectation mismatch");
  return report;
}

ChiBound chi_lower_bound(const TruthTable& t) {
  require_nonconstant(t);
  if (t.arity() > kConflictMaxArity) {
    throw ArityError("chi_lower_bound supports arity <= " + std::to_string(kConflictMaxArity));
  }
  const BlockSensitivity bs = block_sensitivity(t);
  ChiBound bound = min_expected_conflict(t, witness_pair(t, bs.witness));
  if (2 * bound.value < bs.value + 1) {
    throw std::logic_error("chi lower bound " + to_string(bound.value) + " below (bs+1)/2 for " + serialize(t));
  }
  return bound;
}

}  // namespace clab
