#include "mfrb/cascade.hpp"

#include <stdexcept>

namespace mfrb {

CascadeSeeds CascadeSeeds::fully_active(std::vector<NodeId> rumor, LayerId num_features,
                                        std::vector<NodeId> positive) {
  std::sort(rumor.begin(), rumor.end());
  std::sort(positive.begin(), positive.end());
  CascadeSeeds seeds;
  seeds.rumor_layers.assign(num_features, rumor);
  seeds.rumor_users = std::move(rumor);
  seeds.positive_users = std::move(positive);
  return seeds;
}

CascadeSeeds CascadeSeeds::with_positive(std::vector<NodeId> positive) const {
  std::sort(positive.begin(), positive.end());
  CascadeSeeds seeds = *this;
  seeds.positive_users = std::move(positive);
  return seeds;
}

void CascadeSeeds::validate(NodeId num_nodes, LayerId num_features) const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("cascade seeds: " + msg);
  };
  auto check_sorted_in_range = [&](const std::vector<NodeId>& s, const char* name) {
    if (!std::is_sorted(s.begin(), s.end())) fail(std::string(name) + " not sorted");
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(std::string(name) + " has duplicates");
    if (!s.empty() && s.back() >= num_nodes) fail(std::string(name) + " id out of range");
  };
  check_sorted_in_range(rumor_users, "rumor users");
  check_sorted_in_range(positive_users, "positive users");
  if (rumor_layers.size() != num_features) fail("rumor layer count != feature count");
  for (const auto& layer : rumor_layers) {
    check_sorted_in_range(layer, "rumor layer");
    for (const NodeId u : layer)
      if (!contains_sorted(rumor_users, u)) fail("rumor layer not a subset of rumor users");
  }
  for (const NodeId u : positive_users)
    if (contains_sorted(rumor_users, u)) fail("positive seed is also a rumor seed");
}

}  // namespace mfrb
