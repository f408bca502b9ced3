#include <bit>
#include <random>

#include "gtest/gtest.h"

#include "conflict_lab/error.hpp"
#include "conflict_lab/truth_table.hpp"
#include "oracles.hpp"

using namespace clab;

namespace {

Point pt(const char* bits) { return Point::from_string(bits); }

}  // namespace

TEST(PointTest, BitstringListsX1First) {
  EXPECT_EQ(pt("10").bits, 1u);
  EXPECT_EQ(pt("01").bits, 2u);
  EXPECT_EQ(pt("011").to_string(), "011");
  EXPECT_THROW(pt("012"), ParseError);
  EXPECT_THROW(pt(""), ParseError);
}

TEST(ParseSpecTest, NamedFamilies) {
  const TruthTable and2 = parse_spec("AND:2");
  EXPECT_EQ(and2.words()[0], 8u);
  EXPECT_EQ(parse_spec("2:08"), and2);
  const TruthTable c = parse_spec("CONST:3:0");
  EXPECT_EQ(c.arity(), 3);
  EXPECT_EQ(c.count_ones(), 0u);
  EXPECT_EQ(parse_spec("CONST:3:1").count_ones(), 8u);
  EXPECT_EQ(parse_spec(" COMPOSE( AND:2 , OR:2 ) ").arity(), 4);
  EXPECT_EQ(parse_spec("3:E8"), parse_spec("MAJ:3"));
}

TEST(ParseSpecTest, RejectsMalformedInput) {
  EXPECT_THROW(parse_spec("AND"), ParseError);
  EXPECT_THROW(parse_spec("AND:x"), ParseError);
  EXPECT_THROW(parse_spec("FOO:3"), ParseError);
  EXPECT_THROW(parse_spec("2:8g"), ParseError);
  EXPECT_THROW(parse_spec("2:"), ParseError);
  EXPECT_THROW(parse_spec("2:10"), ParseError);  // bit 4 does not exist for n = 2
  EXPECT_THROW(parse_spec("1:4"), ParseError);
  EXPECT_THROW(parse_spec("CONST:2:2"), ParseError);
  EXPECT_THROW(parse_spec("AND:2 extra"), ParseError);
  EXPECT_THROW(parse_spec("COMPOSE(AND:2,OR:2"), ParseError);
  EXPECT_THROW(parse_spec("MAJ:4"), DomainError);
  EXPECT_THROW(parse_spec("AND:0"), ArityError);
  EXPECT_THROW(parse_spec("OR:21"), ArityError);
  EXPECT_THROW(parse_spec("COMPOSE(AND:5,OR:5)"), ArityError);
}

TEST(EvalTest, Examples) {
  EXPECT_TRUE(parse_spec("AND:2").eval(pt("11")));
  EXPECT_FALSE(parse_spec("AND:2").eval(pt("10")));
  EXPECT_FALSE(parse_spec("XOR:3").eval(pt("101")));
  EXPECT_THROW(parse_spec("AND:2").eval(pt("111")), DomainError);
}

TEST(EvalTest, FamiliesMatchDefinitionsExhaustively) {
  for (int n = 1; n <= 4; ++n) {
    const TruthTable a = parse_spec("AND:" + std::to_string(n));
    const TruthTable o = parse_spec("OR:" + std::to_string(n));
    const TruthTable x = parse_spec("XOR:" + std::to_string(n));
    for (std::uint32_t idx = 0; idx < (1u << n); ++idx) {
      const Point p{idx, n};
      int ones = 0;
      bool all = true, any = false;
      for (int i = 0; i < n; ++i) {
        ones += p[i];
        all = all && p[i];
        any = any || p[i];
      }
      EXPECT_EQ(a.eval(p), all);
      EXPECT_EQ(o.eval(p), any);
      EXPECT_EQ(x.eval(p), ones % 2 == 1);
      if (n % 2 == 1) EXPECT_EQ(parse_spec("MAJ:" + std::to_string(n)).eval(p), 2 * ones > n);
    }
  }
}

TEST(SubcubeTest, RestrictAndMembers) {
  const Subcube full = Subcube::full(3);
  EXPECT_TRUE(full.is_full());
  EXPECT_EQ(full.member_count(), 8u);
  const Subcube s = full.restrict(0, false).restrict(2, true);
  EXPECT_EQ(s.to_string(), "0*1");
  EXPECT_EQ(s.fixed_count(), 2);
  EXPECT_EQ(s.member_count(), 2u);
  std::vector<std::uint32_t> members;
  s.for_each_member([&](std::uint32_t idx) { members.push_back(idx); });
  EXPECT_EQ(members, (std::vector<std::uint32_t>{4, 6}));
  EXPECT_THROW(s.restrict(0, true), DomainError);
  EXPECT_THROW(s.restrict(3, true), DomainError);
}

TEST(ConstantOnTest, Examples) {
  const TruthTable and2 = parse_spec("AND:2");
  EXPECT_EQ(constant_on(and2, Subcube::full(2)), Constancy::kNonconstant);
  EXPECT_EQ(constant_on(and2, Subcube::full(2).restrict(0, false)), Constancy::kConst0);
  const TruthTable one = parse_spec("CONST:3:1");
  EXPECT_EQ(constant_on(one, Subcube::full(3)), Constancy::kConst1);
  EXPECT_EQ(constant_on(one, Subcube::full(3).restrict(1, false)), Constancy::kConst1);
}

TEST(ConstantOnTest, FullCubeDetectsConstantTablesOnly) {
  for (std::uint32_t v = 0; v < 16; ++v) {
    const TruthTable t = TruthTable::from_function(2, [v](std::uint32_t i) { return (v >> i) & 1u; });
    const Constancy c = constant_on(t, Subcube::full(2));
    EXPECT_EQ(c == Constancy::kConst0, v == 0);
    EXPECT_EQ(c == Constancy::kConst1, v == 15);
  }
}

TEST(ComposeTest, Examples) {
  EXPECT_EQ(compose(parse_spec("AND:2"), parse_spec("AND:2")), parse_spec("AND:4"));
  EXPECT_EQ(compose(parse_spec("XOR:2"), parse_spec("XOR:2")), parse_spec("XOR:4"));
  EXPECT_FALSE(compose(parse_spec("AND:2"), parse_spec("OR:2")).eval(pt("1100")));
  EXPECT_TRUE(compose(parse_spec("AND:2"), parse_spec("OR:2")).eval(pt("1001")));
  EXPECT_THROW(compose(parse_spec("AND:5"), parse_spec("OR:5")), ArityError);
}

TEST(ComposeTest, BlockOrderAndIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const TruthTable f = oracle::random_table(3, rng, false);
    const TruthTable g = oracle::random_table(2, rng, false);
    const TruthTable fg = compose(f, g);
    ASSERT_EQ(fg.arity(), 6);
    for (std::uint32_t idx = 0; idx < fg.size(); ++idx) {
      std::uint32_t outer = 0;
      for (int i = 0; i < 3; ++i) outer |= static_cast<std::uint32_t>(g.at((idx >> (2 * i)) & 3u)) << i;
      EXPECT_EQ(fg.at(idx), f.at(outer));
    }
    EXPECT_EQ(compose(f, families::identity()), f);
  }
}

TEST(SerializeTest, Examples) {
  EXPECT_EQ(serialize(parse_spec("AND:2")), "2:8");
  EXPECT_EQ(serialize(parse_spec("CONST:1:1")), "1:3");
  EXPECT_EQ(serialize(parse_spec("OR:2")), "2:e");
  EXPECT_EQ(serialize(parse_spec("CONST:4:0")), "4:0");
  EXPECT_EQ(serialize(parse_spec("2:0008")), "2:8");
}

TEST(SerializeTest, RoundTripsRandomTables) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const TruthTable t = oracle::random_table(n, rng, false);
      const std::string s = serialize(t);
      EXPECT_EQ(parse_spec(s), t) << s;
      EXPECT_EQ(serialize(parse_spec(s)), s);
    }
  }
  for (const char* spec : {"AND:7", "MAJ:5", "XOR:12", "CONST:9:1", "COMPOSE(OR:3,AND:3)"}) {
    EXPECT_EQ(parse_spec(serialize(parse_spec(spec))), parse_spec(spec)) << spec;
  }
}
