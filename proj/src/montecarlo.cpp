#include "conflict_lab/montecarlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "conflict_lab/error.hpp"
#include "conflict_lab/parallel.hpp"

namespace clab {

namespace {

struct Branching {
  double to_zero = 0;       // u < to_zero: take the 0-branch
  double to_zero_or_one = 0;  // u < this: take the 1-branch; otherwise stop
};

}  // namespace

SimResult simulate_walk(const TruthTable& t, const DistributionPair& pair, const DecisionTree& tree,
                        std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw DomainError("simulation needs at least one sample");
  const WalkStats stats = walk_stats(t, pair, tree);

  std::vector<Branching> branching(tree.node_count());
  for (const auto& w : stats.nodes) {
    branching[w.node] = {w.to_zero.get_d(), Rational(w.to_zero + w.to_one).get_d()};
  }
  const auto depth = static_cast<std::size_t>(tree.depth());

  const std::uint64_t chunks = (samples + kSimulationChunk - 1) / kSimulationChunk;
  std::vector<std::vector<std::uint64_t>> chunk_counts(chunks, std::vector<std::uint64_t>(depth, 0));
  parallel_for(chunks, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    const std::uint64_t begin = c * kSimulationChunk;
    const std::uint64_t end = std::min(samples, begin + kSimulationChunk);
    auto& counts = chunk_counts[c];
    for (std::uint64_t s = begin; s < end; ++s) {
      DecisionTree::NodeId id = tree.root();
      for (std::size_t r = 1;; ++r) {
        const auto& node = tree.node(id);
        if (node.is_leaf() || r > depth) throw std::logic_error("sampled walk left the tree");
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const Branching& b = branching[id];
        if (u < b.to_zero) {
          id = node.zero;
        } else if (u < b.to_zero_or_one) {
          id = node.one;
        } else {
          ++counts[r - 1];
          break;
        }
      }
    }
  });

  SimResult out;
  out.samples = samples;
  out.seed = seed;
  out.counts.assign(depth, 0);
  for (const auto& counts : chunk_counts) {
    for (std::size_t r = 0; r < depth; ++r) out.counts[r] += counts[r];
  }
  const double n = static_cast<double>(samples);
  out.distribution.resize(depth);
  for (std::size_t r = 0; r < depth; ++r) {
    out.distribution[r] = static_cast<double>(out.counts[r]) / n;
    out.mean += static_cast<double>(r + 1) * static_cast<double>(out.counts[r]);
  }
  out.mean /= n;
  if (samples > 1) {
    double ss = 0;
    for (std::size_t r = 0; r < depth; ++r) {
      const double d = static_cast<double>(r + 1) - out.mean;
      ss += d * d * static_cast<double>(out.counts[r]);
    }
    out.standard_error = std::sqrt(ss / (n - 1) / n);
  }
  return out;
}

}  // namespace clab
