#include <algorithm>
#include <set>

#include "gtest/gtest.h"

#include "conflict_lab/error.hpp"
#include "conflict_lab/measures.hpp"
#include "conflict_lab/trees.hpp"
#include "oracles.hpp"

using namespace clab;

TEST(DecisionTreeTest, TextRoundTrip) {
  const DecisionTree t = DecisionTree::parse("(x1 (x2 0 1) 1)");
  EXPECT_EQ(t.to_string(), "(x1 (x2 0 1) 1)");
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.min_arity(), 2);
  EXPECT_EQ(DecisionTree::parse("  ( x3  0\n(x1 1 0) ) ").to_string(), "(x3 0 (x1 1 0))");
  EXPECT_EQ(DecisionTree::parse("1").depth(), 0);
  EXPECT_EQ(DecisionTree().to_string(), "0");
}

TEST(DecisionTreeTest, RejectsMalformedAndRepeatedQueries) {
  EXPECT_THROW(DecisionTree::parse("(x1 0)"), ParseError);
  EXPECT_THROW(DecisionTree::parse("(y1 0 1)"), ParseError);
  EXPECT_THROW(DecisionTree::parse("(x0 0 1)"), ParseError);
  EXPECT_THROW(DecisionTree::parse("(x1 0 1) 1"), ParseError);
  EXPECT_THROW(DecisionTree::parse("2"), ParseError);
  EXPECT_THROW(DecisionTree::parse("(x1 (x1 0 1) 1)"), DomainError);
  EXPECT_THROW(DecisionTree::parse("(x1 0 (x2 (x1 0 1) 1))"), DomainError);
  // The same variable on different branches is fine.
  EXPECT_NO_THROW(DecisionTree::parse("(x1 (x2 0 1) (x2 1 0))"));
}

TEST(ValidateTest, Examples) {
  const TruthTable and2 = parse_spec("AND:2");
  EXPECT_TRUE(validate(DecisionTree::parse("(x1 0 (x2 0 1))"), and2));
  EXPECT_FALSE(validate(DecisionTree::leaf(false), and2));
  EXPECT_TRUE(validate(DecisionTree::leaf(true), parse_spec("CONST:3:1")));
  EXPECT_THROW(validate(DecisionTree::parse("(x3 0 1)"), and2), DomainError);
  // Queries inside constant subcubes are accepted.
  EXPECT_TRUE(validate(DecisionTree::parse("(x1 (x2 0 0) (x2 0 1))"), and2));
}

TEST(PathOfTest, Examples) {
  const DecisionTree t = DecisionTree::parse("(x1 (x2 0 1) 1)");
  const auto p00 = path_of(t, Point::from_string("00"));
  ASSERT_EQ(p00.size(), 2u);
  EXPECT_EQ(t.node(p00[0]).var, 0);
  EXPECT_EQ(t.node(p00[1]).var, 1);
  const auto p10 = path_of(t, Point::from_string("10"));
  ASSERT_EQ(p10.size(), 1u);
  EXPECT_EQ(p10[0], t.root());
  EXPECT_TRUE(path_of(DecisionTree::leaf(true), Point::from_string("101")).empty());
}

TEST(EnumerateTreesTest, Examples) {
  const auto id = enumerate_trees(families::identity());
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id[0].to_string(), "(x1 0 1)");

  const auto c = enumerate_trees(parse_spec("CONST:1:0"));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].to_string(), "0");

  const auto or2 = enumerate_trees(parse_spec("OR:2"));
  EXPECT_EQ(oracle::tree_count(parse_spec("OR:2")), 2u);
  ASSERT_EQ(or2.size(), 2u);
  EXPECT_EQ(or2[0].to_string(), "(x1 (x2 0 1) 1)");
  EXPECT_EQ(or2[1].to_string(), "(x2 (x1 0 1) 1)");

  EXPECT_EQ(enumerate_trees(parse_spec("XOR:3")).size(), 12u);
  EXPECT_THROW(enumerate_trees(parse_spec("OR:4")), ArityError);
}

TEST(EnumerateTreesTest, AllSmallTables) {
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t total = std::uint64_t{1} << (1u << n);
    for (std::uint64_t v = 0; v < total; ++v) {
      const TruthTable t = TruthTable::from_function(n, [v](std::uint32_t i) { return (v >> i) & 1u; });
      const auto trees = enumerate_trees(t);
      ASSERT_EQ(trees.size(), oracle::tree_count(t)) << serialize(t);
      const int d = decision_tree_depth(t).value;
      std::set<std::string> seen;
      int min_depth = n + 1;
      for (const auto& tree : trees) {
        EXPECT_TRUE(validate(tree, t));
        EXPECT_TRUE(seen.insert(tree.to_string()).second) << "duplicate tree";
        EXPECT_GE(tree.depth(), d);
        min_depth = std::min(min_depth, tree.depth());
        // Every sensitive block of x must be touched on x's path.
        for (std::uint32_t x = 0; x < t.size(); ++x) {
          const Point p{x, n};
          EXPECT_GE(static_cast<int>(path_of(tree, p).size()), block_sensitivity_at(t, p).value);
        }
      }
      EXPECT_EQ(min_depth, d);
    }
  }
}

TEST(LowestIndexTreeTest, ComputesTheFunction) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const TruthTable t = oracle::random_table(6, rng, false);
    EXPECT_TRUE(validate(lowest_index_tree(t, Subcube::full(6)), t));
  }
}
