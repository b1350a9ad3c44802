#pragma once

// Shared helpers for the unit and acceptance suites: tiny fixed graphs,
// seeded random instance generators, and independent brute-force oracles
// that deliberately avoid the library's fast paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "mfrb/cascade.hpp"
#include "mfrb/diffusion.hpp"
#include "mfrb/feature_model.hpp"
#include "mfrb/graph.hpp"
#include "mfrb/rng.hpp"
#include "mfrb/sampler.hpp"

namespace mfrb::test {

inline Graph path_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return graph_from_edges(n, std::move(edges));
}

inline Graph from_edges(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges) {
  return graph_from_edges(n, std::move(edges));
}

// Hand-traceable walkthrough instance: a 4-node path, two features, layer 1
// deterministic-live and layer 2 deterministic-blocked, rumor {0} accepted
// everywhere. f({1}) = 3, f(empty) = 1.8.
struct PathInstance {
  Graph graph = path_graph(4);
  FeatureModel fm = FeatureModel::constant({0.4, 0.6}, {1.0, 0.0});
  CascadeSeeds seeds = CascadeSeeds::fully_active({0}, 2);
};

struct RandomInstance {
  Graph graph;
  FeatureModel fm;
  CascadeSeeds seeds;  // rumor only; positive left empty
};

// Guard-sized instance: n in [4,10], m <= 8, r in {1,2}, constant-probability
// scheme, one or two rumor seeds with random partial activation.
inline RandomInstance random_guard_instance(RngStream& rng) {
  RandomInstance inst;
  const NodeId n = 4 + static_cast<NodeId>(rng.next_below(7));
  const EdgeId m = static_cast<EdgeId>(rng.next_below(9));

  std::vector<std::pair<NodeId, NodeId>> edges;
  while (edges.size() < m) {
    const auto u = static_cast<NodeId>(rng.next_below(n));
    const auto v = static_cast<NodeId>(rng.next_below(n));
    if (u == v) continue;
    if (std::find(edges.begin(), edges.end(), std::make_pair(u, v)) != edges.end()) continue;
    edges.emplace_back(u, v);
  }
  inst.graph = graph_from_edges(n, std::move(edges));

  const LayerId r = 1 + static_cast<LayerId>(rng.next_below(2));
  std::vector<double> weights, probs;
  if (r == 1) {
    weights = {1.0};
  } else {
    const double w1 = 0.1 + 0.8 * rng.next_double();
    weights = {w1, 1.0 - w1};
  }
  for (LayerId i = 0; i < r; ++i) probs.push_back(0.2 + 0.7 * rng.next_double());
  inst.fm = FeatureModel::constant(std::move(weights), std::move(probs));

  const std::uint32_t n_r = 1 + static_cast<std::uint32_t>(rng.next_below(2));
  std::vector<NodeId> rumor;
  while (rumor.size() < n_r) {
    const auto u = static_cast<NodeId>(rng.next_below(n));
    if (std::find(rumor.begin(), rumor.end(), u) == rumor.end()) rumor.push_back(u);
  }
  std::sort(rumor.begin(), rumor.end());
  inst.seeds.rumor_users = rumor;
  inst.seeds.rumor_layers.assign(r, {});
  for (const NodeId u : rumor)
    for (LayerId i = 0; i < r; ++i)
      if (rng.next_double() < 0.8) inst.seeds.rumor_layers[i].push_back(u);
  return inst;
}

// Every size-k subset of `universe`, in lexicographic order.
inline void for_each_subset(const std::vector<NodeId>& universe, std::uint32_t k,
                            const std::function<void(const std::vector<NodeId>&)>& fn) {
  std::vector<NodeId> current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (current.size() == k) {
      fn(current);
      return;
    }
    for (std::size_t i = start; i < universe.size(); ++i) {
      if (universe.size() - i < k - current.size()) break;
      current.push_back(universe[i]);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
}

inline std::vector<NodeId> non_rumor_users(const Graph& g, const CascadeSeeds& seeds) {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < g.num_nodes; ++u)
    if (!contains_sorted(seeds.rumor_users, u)) out.push_back(u);
  return out;
}

// Brute-force weighted coverage of a positive set over a pool; independent
// of the solver's gain counters.
inline double coverage_weight(const SamplePool& pool, std::vector<NodeId> positive) {
  std::sort(positive.begin(), positive.end());
  double covered = 0.0;
  for (std::size_t j = 0; j < pool.size(); ++j)
    if (covers(pool[j], positive)) covered += pool[j].weight;
  return covered;
}

// Exhaustive optimum of f over all size-k positive sets (exact oracle).
inline double exact_opt(const Graph& g, const FeatureModel& fm, const CascadeSeeds& seeds,
                        std::uint32_t k, std::vector<NodeId>* best_out = nullptr) {
  double best = -1.0;
  std::vector<NodeId> best_set;
  for_each_subset(non_rumor_users(g, seeds), k, [&](const std::vector<NodeId>& subset) {
    const double f = evaluate_f_exact(g, fm, seeds.with_positive(subset));
    if (f > best) {
      best = f;
      best_set = subset;
    }
  });
  if (best_out) *best_out = best_set;
  return best;
}

}  // namespace mfrb::test
