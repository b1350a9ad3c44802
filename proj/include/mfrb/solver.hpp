#pragma once

#include <cstdint>
#include <vector>

#include "mfrb/cascade.hpp"
#include "mfrb/feature_model.hpp"
#include "mfrb/graph.hpp"
#include "mfrb/sampler.hpp"

namespace mfrb {

// Budget and accuracy knobs plus the constants derived from them. The
// derived fields are a pure function of (n, r, eps, ell, n_r).
struct SolverParams {
  std::uint32_t k = 1;
  double eps = 0.1;
  double ell = 1.0;

  double eps_prime = 0.0;   // sqrt(2) * eps
  double eps12 = 0.0;       // eps / (2 - 1/e), shared by both tail budgets
  double delta12 = 0.0;     // 1 / (2 n^ell)
  double delta3 = 0.0;      // 1 / (n^ell * log2(n r))
  std::uint64_t num_rumor = 0;

  static SolverParams derive(std::uint32_t k, double eps, double ell, NodeId num_nodes,
                             LayerId num_features, std::uint64_t num_rumor);
};

// ln C(a, b) via log-gamma.
double log_binomial(std::uint64_t a, std::uint64_t b);

// Sample-size constants. The log term folds the failure budget into the
// binomial count: log(C(n - n_r, k)) + log(1/delta).
double compute_lambda_prime(NodeId n, LayerId r, double w_bar, double eps_prime,
                            std::uint32_t k, std::uint64_t n_r, double ell);
double compute_lambda_star(NodeId n, LayerId r, double w_bar, double eps, std::uint32_t k,
                           std::uint64_t n_r, double ell);

struct GreedySelection {
  std::vector<NodeId> seeds;  // in pick order
  double coverage = 0.0;      // W over the pool for the picked set
};

// Greedy weighted max-coverage over the pool: k picks, exact gain counters,
// ties and zero-gain rounds resolved to the lowest allowed id. Full samples
// are covered by whichever pick comes first.
GreedySelection node_selection(const SamplePool& pool, std::uint32_t k,
                               std::span<const NodeId> forbidden_sorted);

struct SamplingStats {
  double lambda_prime = 0.0;
  double lambda_star = 0.0;
  double lower_bound = 0.0;
  std::uint64_t theta = 0;              // final pool size
  std::uint64_t working_pool_size = 0;  // samples drawn during the search
  std::uint32_t iterations = 0;
  bool loop_broke = false;
};

// Lower-bound search over geometrically shrinking targets, then a fresh pool
// of ceil(lambda_star / LB) samples. The working pool is discarded: reusing
// it would feed the final selection samples that already passed a data-
// dependent test.
SamplePool sampling_phase(const Graph& g, const FeatureModel& fm, const CascadeSeeds& seeds,
                          const SolverParams& params, std::uint64_t seed,
                          SamplingStats* stats = nullptr);

struct Solution {
  std::vector<NodeId> seeds;     // sorted
  double w_estimate = 0.0;       // W over the final pool
  double scaled_estimate = 0.0;  // n * r * w_estimate
  std::uint64_t pool_size = 0;
  double lower_bound = 0.0;
  double sampling_ms = 0.0;
  double selection_ms = 0.0;
  SamplingStats stats;
};

Solution revised_imm(const Graph& g, const FeatureModel& fm, const CascadeSeeds& seeds,
                     const SolverParams& params, std::uint64_t seed);

}  // namespace mfrb
