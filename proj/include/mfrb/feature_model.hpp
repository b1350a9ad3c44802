#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfrb/graph.hpp"

namespace mfrb {

using LayerId = std::uint32_t;  // feature index, 0-based

enum class ProbScheme {
  kConstant,         // per-feature constant edge probability
  kWeightedCascade,  // 1 / in-degree of the edge's target, all features
};

// Feature count, global per-feature weights (sum to 1) and the edge
// probability scheme. Immutable once built; shared by the simulator, the
// sampler and the solver.
struct FeatureModel {
  LayerId num_features = 1;
  std::vector<double> weights;       // r entries, each > 0, sum 1
  ProbScheme scheme = ProbScheme::kConstant;
  std::vector<double> const_probs;   // r entries under kConstant, unused otherwise

  double max_weight() const;

  static FeatureModel constant(std::vector<double> weights, std::vector<double> probs);
  static FeatureModel weighted_cascade(std::vector<double> weights);
};

// Returns every violated invariant (weight sum, positivity, probability
// range) as human-readable strings; empty means ok.
std::vector<std::string> validate_feature_model(const FeatureModel& fm);

// Activation probability of `edge` in layer `layer` (0-based). Pure.
double edge_prob(const Graph& g, const FeatureModel& fm, EdgeId edge, LayerId layer);

}  // namespace mfrb
