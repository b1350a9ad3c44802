#pragma once

#include <cstdint>
#include <vector>

#include "mfrb/cascade.hpp"
#include "mfrb/diffusion.hpp"
#include "mfrb/feature_model.hpp"
#include "mfrb/graph.hpp"

namespace mfrb {

// Simulation-based greedy: k rounds of argmax over Monte-Carlo marginal
// gains. Candidates within a round share the round's evaluation streams
// (common random numbers), so the argmax is a paired comparison and the
// result is deterministic. Candidate evaluation is OpenMP-parallel.
std::vector<NodeId> greedy_mc(const Graph& g, const FeatureModel& fm,
                              const CascadeSeeds& seeds, std::uint32_t k, std::uint32_t num,
                              std::uint64_t seed);

// Out-neighbors of the rumor set by descending out-degree, topped up with
// the highest out-degree remaining nodes when the neighborhood is small.
std::vector<NodeId> proximity(const Graph& g, const CascadeSeeds& seeds, std::uint32_t k);

// Uniform k-subset of the non-rumor users.
std::vector<NodeId> random_baseline(const Graph& g, const CascadeSeeds& seeds, std::uint32_t k,
                                    std::uint64_t seed);

}  // namespace mfrb
