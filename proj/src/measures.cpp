#include "conflict_lab/measures.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "conflict_lab/error.hpp"
#include "conflict_lab/subcube_table.hpp"

namespace clab {

namespace {

void check_cap(const TruthTable& t, int cap, const char* what) {
  if (t.arity() > cap) {
    throw ArityError(std::string(what) + " supports arity <= " + std::to_string(cap) + ", got " +
                     std::to_string(t.arity()));
  }
}

void check_point(const TruthTable& t, const Point& x) {
  if (x.arity != t.arity()) throw DomainError("point arity does not match table");
}

// Size first, then lexicographic on the ascending index lists.
bool block_less(std::uint32_t a, std::uint32_t b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  if (a == b) return false;
  const std::uint32_t lowest_diff = (a ^ b) & -(a ^ b);
  return (a & lowest_diff) != 0;
}

std::vector<std::uint32_t> sorted_masks(int arity) {
  std::vector<std::uint32_t> masks(std::size_t{1} << arity);
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::sort(masks.begin(), masks.end(), block_less);
  return masks;
}

/*
 * Exact maximum set packing over the minimal blocks. Branching on the lowest
 * element e still coverable: either one of the blocks containing e is used,
 * or e is discarded. Each packing is reached along exactly one branch.
 */
class PackingSearch {
 public:
  PackingSearch(const std::vector<std::uint32_t>& blocks, int arity) : blocks_(blocks) {
    by_element_.resize(static_cast<std::size_t>(arity));
    for (std::uint32_t b : blocks_) {
      for (int e = 0; e < arity; ++e) {
        if ((b >> e) & 1u) by_element_[static_cast<std::size_t>(e)].push_back(b);
      }
    }
    full_ = arity >= 32 ? ~0u : ((1u << arity) - 1);
  }

  std::vector<std::uint32_t> best() {
    collect_ = false;
    best_size_ = 0;
    best_.clear();
    chosen_.clear();
    descend(full_);
    return best_;
  }

  std::vector<std::vector<std::uint32_t>> all_of_size(int size, std::size_t limit) {
    collect_ = true;
    best_size_ = size;
    limit_ = limit;
    found_.clear();
    chosen_.clear();
    descend(full_);
    return found_;
  }

 private:
  // Union and count of blocks fitting inside `avail`, plus the smallest size.
  int upper_bound(std::uint32_t avail, std::uint32_t& coverable) const {
    coverable = 0;
    int fitting = 0;
    int min_size = std::numeric_limits<int>::max();
    for (std::uint32_t b : blocks_) {
      if ((b & ~avail) != 0) continue;
      coverable |= b;
      ++fitting;
      min_size = std::min(min_size, std::popcount(b));
    }
    if (fitting == 0) return 0;
    return std::min(fitting, std::popcount(coverable) / min_size);
  }

  void descend(std::uint32_t avail) {
    if (collect_ && found_.size() >= limit_) return;
    const int current = static_cast<int>(chosen_.size());
    if (!collect_ && current > best_size_) {
      best_size_ = current;
      best_ = chosen_;
    }
    std::uint32_t coverable = 0;
    const int bound = upper_bound(avail, coverable);
    if (coverable == 0) {
      if (collect_ && current == best_size_) found_.push_back(chosen_);
      return;
    }
    if (collect_ ? current + bound < best_size_ : current + bound <= best_size_) return;

    const int e = std::countr_zero(coverable);
    for (std::uint32_t b : by_element_[static_cast<std::size_t>(e)]) {
      if ((b & ~avail) != 0) continue;
      chosen_.push_back(b);
      descend(avail & ~b);
      chosen_.pop_back();
    }
    descend(avail & ~(1u << e));
  }

  const std::vector<std::uint32_t>& blocks_;
  std::vector<std::vector<std::uint32_t>> by_element_;
  std::uint32_t full_ = 0;

  bool collect_ = false;
  int best_size_ = 0;
  std::size_t limit_ = 0;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::uint32_t> best_;
  std::vector<std::vector<std::uint32_t>> found_;
};

std::uint32_t fixing_index(const SubcubeIndexer& ix, std::uint32_t point, std::uint32_t mask) {
  std::uint32_t idx = 0;
  for (int i = 0; i < ix.arity(); ++i) {
    const std::uint32_t digit = ((mask >> i) & 1u) ? ((point >> i) & 1u) : 2u;
    idx += digit * ix.pow3(i);
  }
  return idx;
}

CertificateComplexity certificate_with(const TruthTable& t, const ConstancyTable& constancy,
                                       const std::vector<std::uint32_t>& order, const Point& x) {
  const bool value = t.eval(x);
  for (std::uint32_t mask : order) {
    if (constancy.at(fixing_index(constancy.indexer(), x.bits, mask)) != Constancy::kNonconstant) {
      return {std::popcount(mask), Certificate{x, mask, value}};
    }
  }
  // The full assignment always certifies.
  throw std::logic_error("certificate search exhausted");
}

}  // namespace

std::vector<std::uint32_t> minimal_sensitive_blocks(const TruthTable& t, const Point& x) {
  check_cap(t, kMeasuresMaxArity, "minimal_sensitive_blocks");
  check_point(t, x);
  const std::uint32_t count = t.size();
  const bool fx = t.at(x.bits);
  // below[B]: some proper subset of B is sensitive.
  std::vector<std::uint8_t> sensitive(count, 0), below(count, 0);
  std::vector<std::uint32_t> out;
  for (std::uint32_t b = 1; b < count; ++b) {
    sensitive[b] = t.at(x.bits ^ b) != fx;
    std::uint8_t has = 0;
    for (std::uint32_t rest = b; rest != 0 && !has; rest &= rest - 1) {
      const std::uint32_t sub = b & ~(rest & -rest);
      has = sensitive[sub] | below[sub];
    }
    below[b] = has;
    if (sensitive[b] && !below[b]) out.push_back(b);
  }
  std::sort(out.begin(), out.end(), block_less);
  return out;
}

BlockSensitivity block_sensitivity_at(const TruthTable& t, const Point& x) {
  const auto blocks = minimal_sensitive_blocks(t, x);
  PackingSearch search(blocks, t.arity());
  auto best = search.best();
  return {static_cast<int>(best.size()), BlockPacking{x, std::move(best)}};
}

std::vector<BlockPacking> maximum_packings(const TruthTable& t, const Point& x, std::size_t limit) {
  const auto blocks = minimal_sensitive_blocks(t, x);
  PackingSearch search(blocks, t.arity());
  const int best = static_cast<int>(search.best().size());
  std::vector<BlockPacking> out;
  for (auto& p : search.all_of_size(best, limit)) out.push_back(BlockPacking{x, std::move(p)});
  return out;
}

BlockSensitivity block_sensitivity(const TruthTable& t) {
  check_cap(t, kMeasuresMaxArity, "block_sensitivity");
  BlockSensitivity best{-1, {}};
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    auto at = block_sensitivity_at(t, Point{idx, t.arity()});
    if (at.value > best.value) best = std::move(at);
    if (best.value == t.arity()) break;
  }
  return best;
}

CertificateComplexity certificate_at(const TruthTable& t, const Point& x) {
  check_cap(t, kMeasuresMaxArity, "certificate_at");
  check_point(t, x);
  const ConstancyTable constancy(t);
  return certificate_with(t, constancy, sorted_masks(t.arity()), x);
}

CertificateComplexity certificate(const TruthTable& t) {
  check_cap(t, kMeasuresMaxArity, "certificate");
  const ConstancyTable constancy(t);
  const auto order = sorted_masks(t.arity());
  CertificateComplexity best{-1, {}};
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    auto at = certificate_with(t, constancy, order, Point{idx, t.arity()});
    if (at.value > best.value) best = at;
  }
  return best;
}

int sensitivity(const TruthTable& t) {
  check_cap(t, kSensitivityMaxArity, "sensitivity");
  int best = 0;
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    const bool fx = t.at(idx);
    int s = 0;
    for (int i = 0; i < t.arity(); ++i) s += t.at(idx ^ (1u << i)) != fx;
    best = std::max(best, s);
  }
  return best;
}

DecisionTreeDepth decision_tree_depth(const TruthTable& t) {
  check_cap(t, kMeasuresMaxArity, "decision_tree_depth");
  const ConstancyTable constancy(t);
  const SubcubeIndexer& ix = constancy.indexer();
  const int n = t.arity();
  std::vector<std::uint8_t> depth(ix.count(), 0);
  std::vector<std::int8_t> choice(ix.count(), -1);
  for (std::uint32_t idx = 0; idx < ix.count(); ++idx) {
    if (constancy.at(idx) != Constancy::kNonconstant) continue;
    int best = std::numeric_limits<int>::max();
    std::uint32_t rest = idx;
    for (int i = 0; i < n; ++i, rest /= 3) {
      if (rest % 3 != 2) continue;
      const int d = std::max(depth[ix.child(idx, i, false)], depth[ix.child(idx, i, true)]);
      if (d < best) {
        best = d;
        choice[idx] = static_cast<std::int8_t>(i);
      }
    }
    depth[idx] = static_cast<std::uint8_t>(1 + best);
  }

  std::function<DecisionTree(std::uint32_t)> build = [&](std::uint32_t idx) {
    switch (constancy.at(idx)) {
      case Constancy::kConst0:
        return DecisionTree::leaf(false);
      case Constancy::kConst1:
        return DecisionTree::leaf(true);
      case Constancy::kNonconstant:
        break;
    }
    const int var = choice[idx];
    return DecisionTree::query(var, build(ix.child(idx, var, false)), build(ix.child(idx, var, true)));
  };
  const std::uint32_t root = ix.count() - 1;
  return {depth[root], build(root)};
}

}  // namespace clab
