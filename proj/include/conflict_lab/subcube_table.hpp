#pragma once

#include <cstdint>
#include <vector>

#include "conflict_lab/truth_table.hpp"

namespace clab {

/*
 * Dense index over all 3^n subcubes of an n-cube. Subcube s gets the
 * base-3 number whose i-th digit is 0 or 1 when x_{i+1} is fixed to that
 * value and 2 when it is free. Fixing a free variable strictly lowers the
 * index, so an ascending sweep visits children before parents.
 */
class SubcubeIndexer {
 public:
  explicit SubcubeIndexer(int arity);

  int arity() const { return arity_; }
  std::uint32_t count() const { return pow3_[static_cast<std::size_t>(arity_)]; }
  std::uint32_t pow3(int var) const { return pow3_[static_cast<std::size_t>(var)]; }

  std::uint32_t index(const Subcube& s) const;
  Subcube subcube(std::uint32_t index) const;

  /// Index of the child with free variable `var` fixed to `value`.
  std::uint32_t child(std::uint32_t index, int var, bool value) const {
    return index - (value ? 1u : 2u) * pow3(var);
  }

 private:
  int arity_;
  std::vector<std::uint32_t> pow3_;
};

/// Constancy of a table on every subcube, computed bottom-up in O(3^n).
class ConstancyTable {
 public:
  /// Throws ArityError above kMaxArity.
  explicit ConstancyTable(const TruthTable& t);

  static constexpr int kMaxArity = 14;

  const SubcubeIndexer& indexer() const { return indexer_; }
  Constancy at(std::uint32_t index) const { return static_cast<Constancy>(status_[index]); }
  Constancy at(const Subcube& s) const { return at(indexer_.index(s)); }

 private:
  SubcubeIndexer indexer_;
  std::vector<std::uint8_t> status_;
};

}  // namespace clab
