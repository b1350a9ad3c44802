#include "mfrb/feature_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mfrb {

double FeatureModel::max_weight() const {
  return *std::max_element(weights.begin(), weights.end());
}

FeatureModel FeatureModel::constant(std::vector<double> weights, std::vector<double> probs) {
  FeatureModel fm;
  fm.num_features = static_cast<LayerId>(weights.size());
  fm.weights = std::move(weights);
  fm.scheme = ProbScheme::kConstant;
  fm.const_probs = std::move(probs);
  if (fm.const_probs.size() != fm.weights.size())
    throw std::invalid_argument("feature model: probs/weights length mismatch");
  return fm;
}

FeatureModel FeatureModel::weighted_cascade(std::vector<double> weights) {
  FeatureModel fm;
  fm.num_features = static_cast<LayerId>(weights.size());
  fm.weights = std::move(weights);
  fm.scheme = ProbScheme::kWeightedCascade;
  return fm;
}

std::vector<std::string> validate_feature_model(const FeatureModel& fm) {
  std::vector<std::string> violations;
  if (fm.num_features < 1) violations.push_back("feature count must be >= 1");
  if (fm.weights.size() != fm.num_features)
    violations.push_back("weight vector length != feature count");
  for (std::size_t i = 0; i < fm.weights.size(); ++i) {
    if (!(fm.weights[i] > 0.0))
      violations.push_back("weight " + std::to_string(i + 1) + " is not positive");
  }
  if (!fm.weights.empty()) {
    const double sum = std::accumulate(fm.weights.begin(), fm.weights.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9)
      violations.push_back("weights sum to " + std::to_string(sum));
  }
  if (fm.scheme == ProbScheme::kConstant) {
    if (fm.const_probs.size() != fm.num_features)
      violations.push_back("probability vector length != feature count");
    for (std::size_t i = 0; i < fm.const_probs.size(); ++i) {
      if (!(fm.const_probs[i] >= 0.0 && fm.const_probs[i] <= 1.0))
        violations.push_back("probability " + std::to_string(i + 1) + " outside [0,1]");
    }
  }
  return violations;
}

double edge_prob(const Graph& g, const FeatureModel& fm, EdgeId edge, LayerId layer) {
  if (edge >= g.num_edges) throw std::out_of_range("edge_prob: edge id out of range");
  if (layer >= fm.num_features) throw std::out_of_range("edge_prob: layer out of range");
  if (fm.scheme == ProbScheme::kConstant) return fm.const_probs[layer];
  return 1.0 / static_cast<double>(g.in_degree(g.edge_target[edge]));
}

}  // namespace mfrb
