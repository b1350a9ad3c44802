#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mfrb/cascade.hpp"
#include "mfrb/feature_model.hpp"
#include "mfrb/graph.hpp"
#include "mfrb/rng.hpp"

namespace mfrb {

// One reverse sample: the users whose selection as positive seeds would
// protect the sampled feature node from the rumor, in the sampled layer's
// realization. `is_full` marks the exhausted-search outcome (the root cannot
// be reached by the rumor at all); it stands for the whole node set and is
// never materialized. A sample with empty users and is_full=false came from
// a rumor-accepted root and can never be covered.
struct MultiSample {
  LayerId layer = 0;
  double weight = 0.0;  // feature weight of `layer`, cached
  bool is_full = false;
  std::vector<NodeId> users;  // sorted

  bool operator==(const MultiSample&) const = default;
};

// Ordered sample collection with a user -> sample positions inverted index.
class SamplePool {
 public:
  SamplePool(NodeId num_nodes, LayerId num_features)
      : index_(num_nodes), layer_counts_(num_features, 0) {}

  void append(MultiSample sample);

  std::size_t size() const { return samples_.size(); }
  const MultiSample& operator[](std::size_t j) const { return samples_[j]; }
  std::span<const MultiSample> samples() const { return samples_; }

  // positions of the samples containing user u (full samples excluded)
  std::span<const std::uint32_t> samples_with(NodeId u) const { return index_[u]; }

  std::uint64_t layer_count(LayerId i) const { return layer_counts_[i]; }
  double full_weight() const { return full_weight_; }
  NodeId num_nodes() const { return static_cast<NodeId>(index_.size()); }
  LayerId num_features() const { return static_cast<LayerId>(layer_counts_.size()); }

 private:
  std::vector<MultiSample> samples_;
  std::vector<std::vector<std::uint32_t>> index_;
  std::vector<std::uint64_t> layer_counts_;
  double full_weight_ = 0.0;
};

// Scratch buffers for reverse BFS; reusable across samples via epoch stamps.
struct SamplerWorkspace {
  SamplerWorkspace(NodeId num_nodes, EdgeId num_edges)
      : visited_epoch(num_nodes, 0), edge_epoch(num_edges, 0), edge_live(num_edges, 0) {}

  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> visited_epoch;
  std::vector<NodeId> frontier;
  std::vector<NodeId> next;
  std::vector<NodeId> collected;
  // lazy realization state, one liveness bit per examined edge
  std::vector<std::uint32_t> edge_epoch;
  std::vector<std::uint8_t> edge_live;
};

// Reverse BFS from `root` on layer `layer` against the realization answered
// by `is_live`. Level order: an empty frontier returns the full marker; a
// frontier touching the rumor-accepted set returns what was collected so far
// (the touching level excluded, mirroring the diffusion tie rule); otherwise
// the level is collected and expanded through live incoming edges.
template <class IsLive>
MultiSample r_sampling(const Graph& g, LayerId layer, double layer_weight, NodeId root,
                       std::span<const NodeId> rumor_layer, IsLive&& is_live,
                       SamplerWorkspace& ws) {
  MultiSample sample;
  sample.layer = layer;
  sample.weight = layer_weight;

  ++ws.epoch;
  ws.frontier.clear();
  ws.collected.clear();
  ws.frontier.push_back(root);
  ws.visited_epoch[root] = ws.epoch;

  while (true) {
    if (ws.frontier.empty()) {
      sample.is_full = true;
      sample.users.clear();
      return sample;
    }
    bool hits_rumor = false;
    for (const NodeId u : ws.frontier)
      if (contains_sorted(rumor_layer, u)) {
        hits_rumor = true;
        break;
      }
    if (hits_rumor) break;

    ws.collected.insert(ws.collected.end(), ws.frontier.begin(), ws.frontier.end());
    ws.next.clear();
    for (const NodeId u : ws.frontier) {
      const auto sources = g.in_neighbors(u);
      const auto edges = g.in_edge_ids(u);
      for (std::size_t j = 0; j < sources.size(); ++j) {
        const NodeId t = sources[j];
        if (ws.visited_epoch[t] == ws.epoch) continue;
        if (!is_live(edges[j])) continue;
        ws.visited_epoch[t] = ws.epoch;
        ws.next.push_back(t);
      }
    }
    std::swap(ws.frontier, ws.next);
  }

  sample.users.assign(ws.collected.begin(), ws.collected.end());
  std::sort(sample.users.begin(), sample.users.end());
  return sample;
}

// Lazy realization: each edge's liveness is drawn on first examination and
// memoized for the rest of the sample.
class LazyRealization {
 public:
  LazyRealization(std::span<const double> probs, RngStream& rng, SamplerWorkspace& ws)
      : probs_(probs), rng_(&rng), ws_(&ws) {}

  bool operator()(EdgeId e) {
    if (ws_->edge_epoch[e] != ws_->epoch) {
      ws_->edge_epoch[e] = ws_->epoch;
      ws_->edge_live[e] = rng_->next_double() < probs_[e] ? 1 : 0;
    }
    return ws_->edge_live[e] != 0;
  }

 private:
  std::span<const double> probs_;
  RngStream* rng_;
  SamplerWorkspace* ws_;
};

// Uniform root in one layer, fresh lazy realization, then r_sampling.
MultiSample single_sampling(const Graph& g, const FeatureModel& fm,
                            std::span<const double> layer_probs, LayerId layer,
                            std::span<const NodeId> rumor_layer, RngStream& rng,
                            SamplerWorkspace& ws);

// Uniform feature node over all n*r of them: picks the layer and the root in
// one draw, then samples that layer.
MultiSample multi_sampling(const Graph& g, const FeatureModel& fm,
                           const std::vector<std::vector<double>>& probs,
                           const CascadeSeeds& seeds, RngStream& rng, SamplerWorkspace& ws);

// 1 iff the positive set covers the sample. Full samples are covered by any
// nonempty set; with an empty set they count zero, which undercounts
// never-reachable roots, but every solver path runs with k >= 1.
bool covers(const MultiSample& sample, std::span<const NodeId> positive_sorted);

// Weighted fraction of covered samples; n*r times this estimates f(S_p).
double estimate_W(const SamplePool& pool, std::span<const NodeId> positive_sorted);

// Extends the pool with `count` samples. Sample t draws every coin from
// stream (seed, stream_salt, start_index + t); the parallel kernel collects
// in index order and is bit-identical to the serial reference.
void append_samples(SamplePool& pool, const Graph& g, const FeatureModel& fm,
                    const std::vector<std::vector<double>>& probs, const CascadeSeeds& seeds,
                    std::uint64_t seed, std::uint64_t stream_salt, std::uint64_t start_index,
                    std::uint64_t count);
void append_samples_serial(SamplePool& pool, const Graph& g, const FeatureModel& fm,
                           const std::vector<std::vector<double>>& probs,
                           const CascadeSeeds& seeds, std::uint64_t seed,
                           std::uint64_t stream_salt, std::uint64_t start_index,
                           std::uint64_t count);

// Debug dump of a pool (native endianness, not a stable format).
void dump_pool(const SamplePool& pool, std::ostream& out);
SamplePool load_pool(std::istream& in, const FeatureModel& fm, NodeId num_nodes);

}  // namespace mfrb
