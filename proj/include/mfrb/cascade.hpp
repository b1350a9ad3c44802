#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "mfrb/feature_model.hpp"
#include "mfrb/graph.hpp"

namespace mfrb {

inline bool contains_sorted(std::span<const NodeId> sorted, NodeId x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

// Competing seed configuration. The rumor side may be only partially
// accepted: rumor_layers[i] holds the rumor users whose feature node in
// layer i starts rumor-accepted (a subset of rumor_users). Positive seeds
// are fully accepted, i.e. active in every layer; that is implicit and not
// stored per layer. All sets are kept sorted.
struct CascadeSeeds {
  std::vector<NodeId> rumor_users;
  std::vector<std::vector<NodeId>> rumor_layers;  // one sorted set per feature
  std::vector<NodeId> positive_users;

  // rumor seeds accepted in every layer
  static CascadeSeeds fully_active(std::vector<NodeId> rumor, LayerId num_features,
                                   std::vector<NodeId> positive = {});

  CascadeSeeds with_positive(std::vector<NodeId> positive) const;

  // throws std::invalid_argument on any violated invariant
  void validate(NodeId num_nodes, LayerId num_features) const;
};

}  // namespace mfrb
