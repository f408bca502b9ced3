#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conflict_lab/measures.hpp"
#include "conflict_lab/rational.hpp"
#include "conflict_lab/trees.hpp"
#include "conflict_lab/truth_table.hpp"

namespace clab {

/// Arity cap for the exact min-over-trees dynamic program.
inline constexpr int kConflictMaxArity = 12;

/// Finitely supported distributions keyed by point index; mu0 lives on
/// f^-1(0) and mu1 on f^-1(1). Zero weights are allowed but never stored by
/// the library's own constructors.
struct DistributionPair {
  int arity = 0;
  std::map<std::uint32_t, Rational> mu0;
  std::map<std::uint32_t, Rational> mu1;

  friend bool operator==(const DistributionPair&, const DistributionPair&) = default;
};

/// Throws DomainError unless both sides are nonnegative, sum to exactly 1,
/// and are supported on the correct preimages of t.
void check_pair(const TruthTable& t, const DistributionPair& pair);

/// A pair conditioned on a subcube and renormalized. A side with no mass in
/// the subcube is flagged and left empty.
struct ConditionalView {
  Subcube cube;
  std::map<std::uint32_t, Rational> mu0;
  std::map<std::uint32_t, Rational> mu1;
  bool zero_mass0 = false;
  bool zero_mass1 = false;
};

ConditionalView condition(const DistributionPair& pair, const Subcube& cube);

struct AlphaBeta {
  Rational alpha;  // Pr[x_i = 0] under the conditioned mu0
  Rational beta;   // Pr[x_i = 0] under the conditioned mu1
};

/// Throws DomainError for a zero-mass side or a variable that is fixed.
AlphaBeta alpha_beta(const ConditionalView& view, int var);

/// Walk statistics at one internal node of a tree.
struct NodeWalk {
  DecisionTree::NodeId node = 0;
  int var = 0;
  int position = 1;  // 1 for the root
  Subcube cube;
  Rational reach;
  /// Unset when a conditional side has zero mass (the node is unreachable).
  std::optional<AlphaBeta> ab;
  Rational to_zero;   // min(alpha, beta)
  Rational to_one;    // 1 - max(alpha, beta)
  Rational stop_here; // |alpha - beta|, conditional on reaching the node
  Rational stop;      // reach * |alpha - beta|
};

struct WalkStats {
  std::vector<NodeWalk> nodes;  // preorder, 0-branch first
  /// stopping_time[r - 1] = Pr[X = r] for r = 1..depth(tree).
  std::vector<Rational> stopping_time;
  Rational expectation;
};

/// Exact reach/stop probabilities of the random walk on `tree`. Throws
/// DomainError for a constant table, an invalid pair or an invalid tree.
WalkStats walk_stats(const TruthTable& t, const DistributionPair& pair, const DecisionTree& tree);

enum class Provenance { kWitness, kHeuristic };
std::string to_string(Provenance p);

/// A certified lower bound on chi(f): the exact min over all trees of E[X]
/// for one specific pair.
struct ChiBound {
  TruthTable table;
  DistributionPair pair;
  Rational value;
  DecisionTree tree;
  Provenance provenance = Provenance::kWitness;
};

/*
 * min over all trees computing t of E[X] for a fixed pair, by memoized DP
 * over subcubes where both conditional sides have mass:
 *
 *   cost(s) = 1 + min_i [ min(a,b) cost(s|x_i=0) + (1 - max(a,b)) cost(s|x_i=1) ]
 *
 * Subcubes with a zero-mass side cost 0 because the walk never reaches
 * them. The attaining tree queries the argmin variable (lowest index on
 * ties) and completes unreachable subcubes with lowest_index_tree.
 */
ChiBound min_expected_conflict(const TruthTable& t, const DistributionPair& pair);

/// The pair built from a bs witness z and its packing B_1..B_k: a point
/// mass on z and the uniform distribution on {z^B_1, ..., z^B_k}, placed on
/// the sides matching f(z) and its complement.
DistributionPair witness_pair(const TruthTable& t, const BlockPacking& packing);
DistributionPair witness_pair(const TruthTable& t);

/// One node of z's path under the witness pair.
struct ZPathNode {
  DecisionTree::NodeId node = 0;
  int var = 0;
  int position = 1;
  int active = 0;            // |A^v|: blocks untouched by earlier queries
  bool hits_active = false;  // the queried variable lies in an active block
  Rational stop_here;        // |alpha - beta|
  Rational reach;
  Rational stop;             // Pr[X = position]
};

struct ZPathReport {
  Point z;
  int k = 0;
  std::vector<std::uint32_t> blocks;
  std::vector<ZPathNode> nodes;
  Rational expectation;
};

/*
 * Walks z's path under the witness pair and checks, in exact arithmetic,
 * that each stop probability is 0 or 1/|A^v| according to whether the
 * queried variable hits an active block, that reach = |A^v|/k, that
 * Pr[X = r] is 0 or 1/k, and that all of this agrees with walk_stats.
 * Throws std::logic_error if any identity fails.
 */
ZPathReport zpath_analysis(const TruthTable& t, const DecisionTree& tree);
ZPathReport zpath_analysis(const TruthTable& t, const DecisionTree& tree, const BlockPacking& packing);

/// min_expected_conflict(t, witness_pair(t)). Throws std::logic_error if
/// the value falls below (bs(f) + 1) / 2.
ChiBound chi_lower_bound(const TruthTable& t);

/// Arity cap for maximize_pairs (each candidate costs a full DP).
inline constexpr int kMaximizeMaxArity = 10;

struct MaximizeOptions {
  int budget = 200;          // candidate evaluations in the random phase
  std::uint64_t seed = 0;
  std::size_t packings_per_point = 16;
};

/*
 * Heuristic search for a pair with large min-over-trees E[X]. Evaluates the
 * witness pair of every bs-maximizing point and packing, then spends the
 * budget on random-restart coordinate perturbation of full-support pairs.
 * Weights are snapped to rationals before exact evaluation, so the result
 * is always a certified lower bound. Deterministic for a given seed.
 */
ChiBound maximize_pairs(const TruthTable& t, const MaximizeOptions& options);

}  // namespace clab
