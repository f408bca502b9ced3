#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conflict_lab/conflict.hpp"

namespace clab {

/// Generator used for every simulation; recorded in reports.
inline constexpr const char* kSimulationGenerator = "mt19937_64";

/// Walks per independently seeded chunk. Chunk c draws from
/// mt19937_64(seed_seq{seed_lo, seed_hi, c}), so the result does not depend
/// on how chunks are spread over threads.
inline constexpr std::uint64_t kSimulationChunk = 1 << 16;

struct SimResult {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // counts[r - 1]: walks that stopped after r nodes
  std::vector<double> distribution;   // empirical Pr[X = r]
  double mean = 0;
  double standard_error = 0;
};

/*
 * Samples `samples` independent runs of the random walk from the root of
 * `tree`. Branch probabilities are computed exactly and compared against a
 * 53-bit uniform variate. Throws DomainError for a constant table, invalid
 * pair or invalid tree, or zero samples.
 */
SimResult simulate_walk(const TruthTable& t, const DistributionPair& pair, const DecisionTree& tree,
                        std::uint64_t samples, std::uint64_t seed);

}  // namespace clab
