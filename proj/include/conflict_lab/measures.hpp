#pragma once

#include <cstdint>
#include <vector>

#include "conflict_lab/trees.hpp"
#include "conflict_lab/truth_table.hpp"

namespace clab {

/// Arity cap shared by block sensitivity, certificate complexity and D(f).
inline constexpr int kMeasuresMaxArity = 12;
inline constexpr int kSensitivityMaxArity = 16;

/// Pairwise-disjoint sensitive blocks at a base point; blocks are masks.
struct BlockPacking {
  Point base;
  std::vector<std::uint32_t> blocks;

  int size() const { return static_cast<int>(blocks.size()); }
};

/// Index set B such that fixing x|_B forces f to f(x).
struct Certificate {
  Point base;
  std::uint32_t indices = 0;
  bool value = false;
};

struct BlockSensitivity {
  int value = 0;
  BlockPacking witness;
};

struct CertificateComplexity {
  int value = 0;
  Certificate witness;
};

struct DecisionTreeDepth {
  int value = 0;
  DecisionTree tree;
};

/// Inclusion-minimal sensitive blocks at x, sorted by size then by their
/// sorted index lists.
std::vector<std::uint32_t> minimal_sensitive_blocks(const TruthTable& t, const Point& x);

/// bs(f, x): a maximum packing of disjoint sensitive blocks at x.
BlockSensitivity block_sensitivity_at(const TruthTable& t, const Point& x);

/// All maximum packings at x (up to `limit`), in search order. The first
/// one equals block_sensitivity_at's witness.
std::vector<BlockPacking> maximum_packings(const TruthTable& t, const Point& x, std::size_t limit);

/// bs(f); the witness point is the lowest index among maximizers.
BlockSensitivity block_sensitivity(const TruthTable& t);

/// C_x(f) with the lexicographically least minimum-size certificate.
CertificateComplexity certificate_at(const TruthTable& t, const Point& x);

/// C(f); the witness is taken at the lowest-index maximizing point.
CertificateComplexity certificate(const TruthTable& t);

/// s(f): the maximum number of sensitive single variables at any point.
int sensitivity(const TruthTable& t);

/// D(f) with an optimal tree (ties broken by lowest variable index).
DecisionTreeDepth decision_tree_depth(const TruthTable& t);

}  // namespace clab
