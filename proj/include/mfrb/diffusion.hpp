#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mfrb/cascade.hpp"
#include "mfrb/feature_model.hpp"
#include "mfrb/graph.hpp"
#include "mfrb/rng.hpp"

namespace mfrb {

enum class CascadeStatus : std::uint8_t { kNone = 0, kRumor = 1, kPositive = 2 };

// Terminal state of one layer's competitive diffusion.
struct LayerOutcome {
  std::vector<CascadeStatus> status;  // n entries
};

// Per-layer edge probabilities resolved into flat arrays (r x m).
std::vector<std::vector<double>> edge_prob_table(const Graph& g, const FeatureModel& fm);

// One synchronous competitive cascade on layer `layer`: rumor wins ties,
// every activated node attempts each outgoing edge once in the round after
// its activation, statuses never change once set.
LayerOutcome simulate_layer(const Graph& g, const FeatureModel& fm, LayerId layer,
                            const CascadeSeeds& seeds, RngStream& rng);

// True iff the weighted accepted features reach the threshold.
bool user_activation(const FeatureModel& fm, std::span<const bool> accepted, double theta);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint32_t num_runs = 0;
};

// Monte-Carlo estimate of f(S_p), the expected weight of users the rumor
// never activates. The uniform activation threshold is integrated out
// analytically: a run contributes sum_i w_i * (n - #rumor-accepted in layer i).
// Run j draws all of its coins from stream (seed, stream_salt, j), so the
// OpenMP version is bit-identical to the serial reference.
McEstimate evaluate_f_mc(const Graph& g, const FeatureModel& fm, const CascadeSeeds& seeds,
                         std::uint32_t num, std::uint64_t seed,
                         std::uint64_t stream_salt = salt::kMcOracle);
McEstimate evaluate_f_mc_serial(const Graph& g, const FeatureModel& fm,
                                const CascadeSeeds& seeds, std::uint32_t num,
                                std::uint64_t seed,
                                std::uint64_t stream_salt = salt::kMcOracle);

// Exact f(S_p) by enumerating every live-edge realization of every layer.
// Only meant for oracle-sized instances; throws beyond the guard.
inline constexpr std::uint64_t kExactGuard = 22;  // requires r * m <= kExactGuard
double evaluate_f_exact(const Graph& g, const FeatureModel& fm, const CascadeSeeds& seeds);

}  // namespace mfrb
