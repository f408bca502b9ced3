#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "conflict_lab/error.hpp"
#include "conflict_lab/montecarlo.hpp"
#include "oracles.hpp"

using namespace clab;

namespace {

double to_double(const Rational& q) { return q.get_d(); }

// |empirical - exact| <= z * se for the mean and every Pr[X = r].
void expect_agrees(const WalkStats& exact, const SimResult& sim, double z) {
  const double mu = to_double(exact.expectation);
  EXPECT_LE(std::abs(sim.mean - mu), z * sim.standard_error + 1e-12);
  ASSERT_EQ(sim.distribution.size(), exact.stopping_time.size());
  for (std::size_t r = 0; r < sim.distribution.size(); ++r) {
    const double p = to_double(exact.stopping_time[r]);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(sim.samples));
    EXPECT_LE(std::abs(sim.distribution[r] - p), z * se + 1e-12) << "r = " << r + 1;
  }
}

}  // namespace

TEST(SimulateWalkTest, IdentityAlwaysStopsAtTheRoot) {
  DistributionPair p;
  p.arity = 1;
  p.mu0[0] = 1;
  p.mu1[1] = 1;
  const SimResult r = simulate_walk(families::identity(), p, DecisionTree::parse("(x1 0 1)"), 1000, 5);
  EXPECT_EQ(r.mean, 1.0);
  EXPECT_EQ(r.standard_error, 0.0);
  EXPECT_EQ(r.counts, (std::vector<std::uint64_t>{1000}));
}

TEST(SimulateWalkTest, OrTwoMeanIsThreeHalves) {
  const TruthTable or2 = parse_spec("OR:2");
  const DecisionTree tree = DecisionTree::parse("(x1 (x2 0 1) 1)");
  const SimResult r = simulate_walk(or2, witness_pair(or2), tree, 1000000, 0);
  EXPECT_EQ(r.samples, 1000000u);
  EXPECT_NEAR(r.mean, 1.5, 0.0015);
  EXPECT_NEAR(r.standard_error, 0.0005, 0.00001);
  expect_agrees(walk_stats(or2, witness_pair(or2), tree), r, 3);
}

TEST(SimulateWalkTest, DeterministicForSeed) {
  const TruthTable t = parse_spec("MAJ:3");
  const DistributionPair pair = witness_pair(t);
  const DecisionTree tree = min_expected_conflict(t, pair).tree;
  const SimResult a = simulate_walk(t, pair, tree, 200000, 42);
  const SimResult b = simulate_walk(t, pair, tree, 200000, 42);
  const SimResult c = simulate_walk(t, pair, tree, 200000, 43);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_NE(a.counts, c.counts);
}

TEST(SimulateWalkTest, Errors) {
  const TruthTable or2 = parse_spec("OR:2");
  const DecisionTree tree = DecisionTree::parse("(x1 (x2 0 1) 1)");
  EXPECT_THROW(simulate_walk(or2, witness_pair(or2), tree, 0, 0), DomainError);
  EXPECT_THROW(simulate_walk(parse_spec("CONST:2:1"), witness_pair(or2), DecisionTree::leaf(true), 10, 0),
               DomainError);
  EXPECT_THROW(simulate_walk(or2, witness_pair(or2), DecisionTree::parse("(x1 0 1)"), 10, 0), DomainError);
}

TEST(SimulateWalkTest, BatteryAgreesWithExactDistribution) {
  std::mt19937_64 rng(101);
  const char* specs[] = {"XOR:3", "MAJ:5", "COMPOSE(AND:2,OR:2)", "AND:4", "OR:5"};
  for (const char* spec : specs) {
    const TruthTable t = parse_spec(spec);
    const DistributionPair pair = witness_pair(t);
    const DecisionTree tree = min_expected_conflict(t, pair).tree;
    expect_agrees(walk_stats(t, pair, tree), simulate_walk(t, pair, tree, 200000, 7), 4);
  }
  for (int trial = 0; trial < 5; ++trial) {
    const TruthTable t = oracle::random_table(4, rng);
    const DistributionPair pair = oracle::random_pair(t, rng, trial % 2 == 0);
    const DecisionTree tree = lowest_index_tree(t, Subcube::full(4));
    expect_agrees(walk_stats(t, pair, tree), simulate_walk(t, pair, tree, 200000, trial), 4);
  }
}
