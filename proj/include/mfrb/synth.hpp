#pragma once

#include <cstdint>

#include "mfrb/graph.hpp"

namespace mfrb {

// Uniform random simple directed graph with exactly m edges, no self-loops.
// Deterministic in the seed; used by tests and the benchmark driver.
Graph random_graph(NodeId num_nodes, EdgeId num_edges, std::uint64_t seed);

}  // namespace mfrb
