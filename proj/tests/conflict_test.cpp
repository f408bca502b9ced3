#include <random>

#include "gtest/gtest.h"

#include "conflict_lab/conflict.hpp"
#include "conflict_lab/error.hpp"
#include "oracles.hpp"

using namespace clab;

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }
std::uint32_t idx(const char* bits) { return Point::from_string(bits).bits; }

std::vector<TruthTable> nonconstant_tables(int n) {
  std::vector<TruthTable> out;
  const std::uint64_t total = std::uint64_t{1} << (1u << n);
  for (std::uint64_t v = 1; v + 1 < total; ++v) {
    out.push_back(TruthTable::from_function(n, [v](std::uint32_t i) { return (v >> i) & 1u; }));
  }
  return out;
}

DistributionPair point_masses() {
  DistributionPair p;
  p.arity = 1;
  p.mu0[0] = 1;
  p.mu1[1] = 1;
  return p;
}

Rational brute_min(const TruthTable& t, const DistributionPair& pair) {
  Rational best = -1;
  for (const auto& tree : enumerate_trees(t)) {
    const Rational e = walk_stats(t, pair, tree).expectation;
    if (best < 0 || e < best) best = e;
  }
  return best;
}

}  // namespace

TEST(CheckPairTest, RejectsInvalidPairs) {
  const TruthTable or2 = parse_spec("OR:2");
  DistributionPair p = witness_pair(or2);
  EXPECT_NO_THROW(check_pair(or2, p));
  DistributionPair wrong_side = p;
  wrong_side.mu0[idx("10")] = 0;  // zero weight is tolerated
  EXPECT_NO_THROW(check_pair(or2, wrong_side));
  wrong_side.mu0 = {{idx("10"), q(1)}};
  EXPECT_THROW(check_pair(or2, wrong_side), DomainError);
  DistributionPair unnormalized = p;
  unnormalized.mu1[idx("10")] = q(1, 3);
  EXPECT_THROW(check_pair(or2, unnormalized), DomainError);
  DistributionPair negative = p;
  negative.mu1 = {{idx("10"), q(3, 2)}, {idx("01"), q(-1, 2)}};
  EXPECT_THROW(check_pair(or2, negative), DomainError);
  DistributionPair arity = p;
  arity.arity = 3;
  EXPECT_THROW(check_pair(or2, arity), DomainError);
}

TEST(AlphaBetaTest, Examples) {
  const TruthTable or2 = parse_spec("OR:2");
  const DistributionPair w = witness_pair(or2);
  const auto root = alpha_beta(condition(w, Subcube::full(2)), 0);
  EXPECT_EQ(root.alpha, 1);
  EXPECT_EQ(root.beta, q(1, 2));
  const auto after = alpha_beta(condition(w, Subcube::full(2).restrict(0, false)), 1);
  EXPECT_EQ(after.alpha, 1);
  EXPECT_EQ(after.beta, 0);

  // Identical marginals on x2 give alpha = beta.
  DistributionPair same;
  same.arity = 2;
  same.mu0 = {{idx("00"), q(1, 2)}, {idx("01"), q(1, 2)}};
  same.mu1 = {{idx("10"), q(1, 2)}, {idx("11"), q(1, 2)}};
  const auto ab = alpha_beta(condition(same, Subcube::full(2)), 1);
  EXPECT_EQ(ab.alpha, ab.beta);
}

TEST(AlphaBetaTest, Errors) {
  const DistributionPair w = witness_pair(parse_spec("OR:2"));
  const Subcube x1_is_1 = Subcube::full(2).restrict(0, true);
  const ConditionalView view = condition(w, x1_is_1);
  EXPECT_TRUE(view.zero_mass0);
  EXPECT_FALSE(view.zero_mass1);
  EXPECT_THROW(alpha_beta(view, 1), DomainError);
  EXPECT_THROW(alpha_beta(condition(w, Subcube::full(2).restrict(1, false)), 1), DomainError);
}

TEST(ConditionalViewTest, Renormalizes) {
  const DistributionPair w = witness_pair(parse_spec("XOR:3"));
  const ConditionalView v = condition(w, Subcube::full(3).restrict(0, false));
  EXPECT_EQ(v.mu1.size(), 2u);
  for (const auto& [x, p] : v.mu1) EXPECT_EQ(p, q(1, 2));
  EXPECT_EQ(v.mu0.at(0), 1);
}

TEST(WalkStatsTest, Examples) {
  const auto id = walk_stats(families::identity(), point_masses(), DecisionTree::parse("(x1 0 1)"));
  ASSERT_EQ(id.stopping_time.size(), 1u);
  EXPECT_EQ(id.stopping_time[0], 1);
  EXPECT_EQ(id.expectation, 1);

  const TruthTable or2 = parse_spec("OR:2");
  const auto s = walk_stats(or2, witness_pair(or2), DecisionTree::parse("(x1 (x2 0 1) 1)"));
  ASSERT_EQ(s.stopping_time.size(), 2u);
  EXPECT_EQ(s.stopping_time[0], q(1, 2));
  EXPECT_EQ(s.stopping_time[1], q(1, 2));
  EXPECT_EQ(s.expectation, q(3, 2));
  ASSERT_EQ(s.nodes.size(), 2u);
  EXPECT_EQ(s.nodes[1].reach, q(1, 2));
  EXPECT_EQ(s.nodes[1].stop_here, 1);
}

TEST(WalkStatsTest, Errors) {
  const TruthTable or2 = parse_spec("OR:2");
  EXPECT_THROW(walk_stats(or2, witness_pair(or2), DecisionTree::parse("(x1 0 1)")), DomainError);
  EXPECT_THROW(walk_stats(parse_spec("CONST:2:1"), witness_pair(or2), DecisionTree::leaf(true)), DomainError);
  DistributionPair bad = witness_pair(or2);
  bad.mu1.erase(bad.mu1.begin());
  EXPECT_THROW(walk_stats(or2, bad, DecisionTree::parse("(x1 (x2 0 1) 1)")), DomainError);
}

TEST(WalkStatsTest, ConservationAndUnreachabilityProperties) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const TruthTable t = oracle::random_table(n, rng);
    const DistributionPair pair = oracle::random_pair(t, rng, trial % 2 == 0);
    const auto trees = enumerate_trees(t);
    const DecisionTree& tree = trees[rng() % trees.size()];
    const WalkStats s = walk_stats(t, pair, tree);
    Rational stop_total = 0, time_total = 0;
    for (const auto& w : s.nodes) {
      stop_total += w.stop;
      const ConditionalView v = condition(pair, w.cube);
      if (v.zero_mass0 || v.zero_mass1) {
        EXPECT_EQ(w.reach, 0);
        EXPECT_FALSE(w.ab.has_value());
      } else {
        EXPECT_EQ(w.to_zero + w.to_one + w.stop_here, 1);
      }
    }
    for (const auto& p : s.stopping_time) time_total += p;
    EXPECT_EQ(stop_total, 1);
    EXPECT_EQ(time_total, 1);
    EXPECT_EQ(s.expectation, oracle::expected_visits(pair, tree));
  }
}

TEST(MinExpectedConflictTest, Examples) {
  EXPECT_EQ(min_expected_conflict(families::identity(), point_masses()).value, 1);

  const TruthTable or2 = parse_spec("OR:2");
  EXPECT_EQ(brute_min(or2, witness_pair(or2)), q(3, 2));
  for (const auto& tree : enumerate_trees(or2)) {
    EXPECT_EQ(walk_stats(or2, witness_pair(or2), tree).expectation, q(3, 2));
  }
  EXPECT_EQ(min_expected_conflict(or2, witness_pair(or2)).value, q(3, 2));

  const TruthTable and2 = parse_spec("AND:2");
  EXPECT_EQ(brute_min(and2, witness_pair(and2)), q(3, 2));
  EXPECT_EQ(min_expected_conflict(and2, witness_pair(and2)).value, q(3, 2));
}

TEST(MinExpectedConflictTest, Errors) {
  EXPECT_THROW(min_expected_conflict(parse_spec("CONST:2:0"), DistributionPair{}), DomainError);
  EXPECT_THROW(min_expected_conflict(parse_spec("OR:13"), DistributionPair{}), ArityError);
  EXPECT_THROW(min_expected_conflict(parse_spec("OR:2"), point_masses()), DomainError);
}

TEST(MinExpectedConflictTest, MatchesTreeEnumeration) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 2; ++n) {
    for (const auto& t : nonconstant_tables(n)) {
      for (int trial = 0; trial < 5; ++trial) {
        const DistributionPair pair = trial == 0 ? witness_pair(t) : oracle::random_pair(t, rng, trial % 2 == 0);
        const ChiBound b = min_expected_conflict(t, pair);
        EXPECT_EQ(b.value, brute_min(t, pair)) << serialize(t);
        EXPECT_EQ(walk_stats(t, pair, b.tree).expectation, b.value);
      }
    }
  }
  for (int trial = 0; trial < 60; ++trial) {
    const TruthTable t = oracle::random_table(3, rng);
    const DistributionPair pair = oracle::random_pair(t, rng, trial % 3 == 0);
    const ChiBound b = min_expected_conflict(t, pair);
    EXPECT_EQ(b.value, brute_min(t, pair)) << serialize(t);
    EXPECT_TRUE(validate(b.tree, t));
    EXPECT_EQ(walk_stats(t, pair, b.tree).expectation, b.value);
    EXPECT_GE(b.value, 1);
    EXPECT_LE(b.value, decision_tree_depth(t).value);
  }
}

TEST(MinExpectedConflictTest, ExtractedTreeAttainsValueOnLargerTables) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const TruthTable t = oracle::random_table(6, rng);
    const DistributionPair pair = oracle::random_pair(t, rng, true);
    const ChiBound b = min_expected_conflict(t, pair);
    EXPECT_EQ(walk_stats(t, pair, b.tree).expectation, b.value);
    EXPECT_EQ(oracle::expected_visits(pair, b.tree), b.value);
    EXPECT_LE(b.value, decision_tree_depth(t).value);
  }
}

TEST(WitnessPairTest, Examples) {
  const DistributionPair or2 = witness_pair(parse_spec("OR:2"));
  EXPECT_EQ(or2.mu0, (std::map<std::uint32_t, Rational>{{idx("00"), q(1)}}));
  EXPECT_EQ(or2.mu1, (std::map<std::uint32_t, Rational>{{idx("10"), q(1, 2)}, {idx("01"), q(1, 2)}}));

  const DistributionPair and2 = witness_pair(parse_spec("AND:2"));
  EXPECT_EQ(and2.mu1, (std::map<std::uint32_t, Rational>{{idx("11"), q(1)}}));
  EXPECT_EQ(and2.mu0, (std::map<std::uint32_t, Rational>{{idx("01"), q(1, 2)}, {idx("10"), q(1, 2)}}));

  const DistributionPair xor3 = witness_pair(parse_spec("XOR:3"));
  EXPECT_EQ(xor3.mu0, (std::map<std::uint32_t, Rational>{{idx("000"), q(1)}}));
  EXPECT_EQ(xor3.mu1, (std::map<std::uint32_t, Rational>{
                          {idx("100"), q(1, 3)}, {idx("010"), q(1, 3)}, {idx("001"), q(1, 3)}}));

  EXPECT_THROW(witness_pair(parse_spec("CONST:3:0")), DomainError);
}

TEST(ZPathAnalysisTest, OrTwo) {
  const TruthTable or2 = parse_spec("OR:2");
  const ZPathReport r = zpath_analysis(or2, DecisionTree::parse("(x1 (x2 0 1) 1)"));
  EXPECT_EQ(r.k, 2);
  ASSERT_EQ(r.nodes.size(), 2u);
  EXPECT_EQ(r.nodes[0].stop_here, q(1, 2));
  EXPECT_EQ(r.nodes[0].reach, 1);
  EXPECT_EQ(r.nodes[0].stop, q(1, 2));
  EXPECT_EQ(r.nodes[1].stop_here, 1);
  EXPECT_EQ(r.nodes[1].reach, q(1, 2));
  EXPECT_EQ(r.nodes[1].stop, q(1, 2));
  EXPECT_EQ(r.expectation, q(3, 2));
}

TEST(ZPathAnalysisTest, XorThreeStopsUniformly) {
  const TruthTable xor3 = parse_spec("XOR:3");
  for (const auto& tree : enumerate_trees(xor3)) {
    const ZPathReport r = zpath_analysis(xor3, tree);
    ASSERT_EQ(r.nodes.size(), 3u);
    for (const auto& node : r.nodes) EXPECT_EQ(node.stop, q(1, 3));
    EXPECT_EQ(r.expectation, 2);  // (k + 1) / 2 with k = 3
  }
}

TEST(ZPathAnalysisTest, HoldsForEveryTreeOfEverySmallFunction) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& t : nonconstant_tables(n)) {
      for (const auto& tree : enumerate_trees(t)) {
        const ZPathReport r = zpath_analysis(t, tree);
        EXPECT_GE(static_cast<int>(r.nodes.size()), r.k);
        EXPECT_GE(2 * r.expectation, r.k + 1);
      }
    }
  }
  EXPECT_THROW(zpath_analysis(parse_spec("OR:2"), DecisionTree::parse("(x1 0 1)")), DomainError);
}

TEST(ChiLowerBoundTest, Examples) {
  const ChiBound or2 = chi_lower_bound(parse_spec("OR:2"));
  EXPECT_EQ(or2.value, q(3, 2));
  EXPECT_EQ(or2.provenance, Provenance::kWitness);
  EXPECT_GE(chi_lower_bound(parse_spec("AND:3")).value, 2);
  const TruthTable maj3 = parse_spec("MAJ:3");
  EXPECT_EQ(oracle::block_sensitivity(maj3), 2);
  EXPECT_GE(2 * chi_lower_bound(maj3).value, 3);
  EXPECT_THROW(chi_lower_bound(parse_spec("CONST:1:1")), DomainError);
}

TEST(ChiLowerBoundTest, TheoremForAllSmallFunctions) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& t : nonconstant_tables(n)) {
      const ChiBound b = chi_lower_bound(t);
      EXPECT_GE(2 * b.value, oracle::block_sensitivity(t) + 1) << serialize(t);
      EXPECT_GE(b.value, 1);
      EXPECT_LE(b.value, oracle::depth(t));
    }
  }
}

TEST(MaximizePairsTest, Examples) {
  EXPECT_EQ(maximize_pairs(families::identity(), {50, 1, 16}).value, 1);
  const ChiBound or2 = maximize_pairs(parse_spec("OR:2"), {100, 3, 16});
  EXPECT_GE(or2.value, q(3, 2));
  EXPECT_LE(or2.value, 2);
  EXPECT_NO_THROW(check_pair(parse_spec("OR:2"), or2.pair));
  EXPECT_EQ(min_expected_conflict(parse_spec("OR:2"), or2.pair).value, or2.value);
  EXPECT_THROW(maximize_pairs(parse_spec("CONST:2:0"), {}), DomainError);
  EXPECT_THROW(maximize_pairs(parse_spec("OR:11"), {}), ArityError);
}

TEST(MaximizePairsTest, BoundedByDepthAndDeterministic) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    const TruthTable t = oracle::random_table(3 + trial % 2, rng);
    const MaximizeOptions opts{60, static_cast<std::uint64_t>(trial), 8};
    const ChiBound a = maximize_pairs(t, opts);
    const ChiBound b = maximize_pairs(t, opts);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.pair, b.pair);
    EXPECT_GE(a.value, chi_lower_bound(t).value);
    EXPECT_LE(a.value, decision_tree_depth(t).value);
  }
}
