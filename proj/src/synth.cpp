#include "mfrb/synth.hpp"

#include <stdexcept>
#include <unordered_set>

#include "mfrb/rng.hpp"

namespace mfrb {

Graph random_graph(NodeId num_nodes, EdgeId num_edges, std::uint64_t seed) {
  if (num_nodes < 2 && num_edges > 0)
    throw std::invalid_argument("random_graph: need at least two nodes");
  const std::uint64_t max_edges =
      static_cast<std::uint64_t>(num_nodes) * (num_nodes - 1);
  if (num_edges > max_edges) throw std::invalid_argument("random_graph: too many edges");

  RngStream rng(seed, 0x57a7ull, 0);
  std::unordered_set<std::uint64_t> used;
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(num_edges);
  while (edges.size() < num_edges) {
    const auto u = static_cast<NodeId>(rng.next_below(num_nodes));
    const auto v = static_cast<NodeId>(rng.next_below(num_nodes));
    if (u == v) continue;
    const std::uint64_t key = static_cast<std::uint64_t>(u) * num_nodes + v;
    if (!used.insert(key).second) continue;
    edges.emplace_back(u, v);
  }
  return graph_from_edges(num_nodes, std::move(edges));
}

}  // namespace mfrb
