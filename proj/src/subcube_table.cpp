#include "conflict_lab/subcube_table.hpp"

#include "conflict_lab/error.hpp"

namespace clab {

SubcubeIndexer::SubcubeIndexer(int arity) : arity_(arity), pow3_(static_cast<std::size_t>(arity) + 1, 1) {
  for (std::size_t i = 1; i < pow3_.size(); ++i) pow3_[i] = 3 * pow3_[i - 1];
}

std::uint32_t SubcubeIndexer::index(const Subcube& s) const {
  std::uint32_t idx = 0;
  for (int i = 0; i < arity_; ++i) {
    std::uint32_t digit = s.is_free(i) ? 2u : ((s.fixed_values() >> i) & 1u);
    idx += digit * pow3(i);
  }
  return idx;
}

Subcube SubcubeIndexer::subcube(std::uint32_t index) const {
  Subcube s = Subcube::full(arity_);
  for (int i = 0; i < arity_; ++i, index /= 3) {
    const std::uint32_t digit = index % 3;
    if (digit != 2) s = s.restrict(i, digit == 1);
  }
  return s;
}

ConstancyTable::ConstancyTable(const TruthTable& t) : indexer_(t.arity()) {
  if (t.arity() > kMaxArity) {
    throw ArityError("constancy table supports arity <= " + std::to_string(kMaxArity));
  }
  const int n = t.arity();
  status_.resize(indexer_.count());
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(n), 0);
  for (std::uint32_t idx = 0; idx < indexer_.count(); ++idx) {
    int lowest_free = -1;
    std::uint32_t point = 0;
    for (int i = 0; i < n; ++i) {
      if (digits[static_cast<std::size_t>(i)] == 2) {
        if (lowest_free < 0) lowest_free = i;
      } else if (digits[static_cast<std::size_t>(i)] == 1) {
        point |= 1u << i;
      }
    }
    if (lowest_free < 0) {
      status_[idx] = static_cast<std::uint8_t>(t.at(point) ? Constancy::kConst1 : Constancy::kConst0);
    } else {
      const auto a = status_[indexer_.child(idx, lowest_free, false)];
      const auto b = status_[indexer_.child(idx, lowest_free, true)];
      status_[idx] = a == b ? a : static_cast<std::uint8_t>(Constancy::kNonconstant);
    }
    // Increment the base-3 counter.
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < 3) break;
      digits[i] = 0;
    }
  }
}

}  // namespace clab
