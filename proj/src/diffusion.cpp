#include "mfrb/diffusion.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

namespace mfrb {

std::vector<std::vector<double>> edge_prob_table(const Graph& g, const FeatureModel& fm) {
  std::vector<std::vector<double>> table(fm.num_features);
  for (LayerId i = 0; i < fm.num_features; ++i) {
    table[i].resize(g.num_edges);
    for (EdgeId e = 0; e < g.num_edges; ++e) table[i][e] = edge_prob(g, fm, e, i);
  }
  return table;
}

namespace {

// Scratch buffers for repeated cascades; epoch stamping avoids O(n) clears.
struct SimWorkspace {
  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> status_epoch;
  std::vector<CascadeStatus> status;
  std::vector<std::uint32_t> offer_epoch;
  std::vector<std::uint8_t> offer_rumor;
  std::vector<NodeId> frontier;
  std::vector<NodeId> offered;

  explicit SimWorkspace(NodeId n)
      : status_epoch(n, 0), status(n, CascadeStatus::kNone), offer_epoch(n, 0), offer_rumor(n, 0) {}

  bool active(NodeId v) const { return status_epoch[v] == epoch; }
  CascadeStatus status_of(NodeId v) const {
    return active(v) ? status[v] : CascadeStatus::kNone;
  }
  void activate(NodeId v, CascadeStatus st) {
    status_epoch[v] = epoch;
    status[v] = st;
  }
};

// Competitive BFS over one layer against a fixed (or lazily drawn) live-edge
// assignment. Returns the number of rumor-accepted nodes. `is_live(e)` must be
// deterministic per call sequence; it is consulted at most once per edge.
template <class IsLive>
std::uint32_t run_layer(const Graph& g, std::span<const NodeId> rumor_layer,
                        std::span<const NodeId> positive, IsLive&& is_live, SimWorkspace& ws) {
  ++ws.epoch;
  ws.frontier.clear();
  std::uint32_t rumor_count = 0;
  for (const NodeId u : rumor_layer) {
    ws.activate(u, CascadeStatus::kRumor);
    ws.frontier.push_back(u);
    ++rumor_count;
  }
  for (const NodeId u : positive) {
    ws.activate(u, CascadeStatus::kPositive);
    ws.frontier.push_back(u);
  }

  while (!ws.frontier.empty()) {
    ws.offered.clear();
    for (const NodeId u : ws.frontier) {
      const bool from_rumor = ws.status[u] == CascadeStatus::kRumor;
      for (EdgeId e = g.out_offsets[u]; e < g.out_offsets[u + 1]; ++e) {
        const NodeId v = g.edge_target[e];
        if (ws.active(v)) continue;
        if (!is_live(e)) continue;
        if (ws.offer_epoch[v] != ws.epoch) {
          ws.offer_epoch[v] = ws.epoch;
          ws.offer_rumor[v] = from_rumor;
          ws.offered.push_back(v);
        } else if (from_rumor) {
          ws.offer_rumor[v] = 1;  // rumor wins a same-round tie
        }
      }
    }
    ws.frontier.clear();
    for (const NodeId v : ws.offered) {
      const bool rumor = ws.offer_rumor[v] != 0;
      ws.activate(v, rumor ? CascadeStatus::kRumor : CascadeStatus::kPositive);
      if (rumor) ++rumor_count;
      ws.frontier.push_back(v);
    }
  }
  return rumor_count;
}

double run_value(const Graph& g, const FeatureModel& fm,
                 const std::vector<std::vector<double>>& probs, const CascadeSeeds& seeds,
                 RngStream& rng, SimWorkspace& ws) {
  double value = 0.0;
  for (LayerId i = 0; i < fm.num_features; ++i) {
    const auto& p = probs[i];
    const std::uint32_t rumor = run_layer(
        g, seeds.rumor_layers[i], seeds.positive_users,
        [&](EdgeId e) { return rng.next_double() < p[e]; }, ws);
    value += fm.weights[i] * static_cast<double>(g.num_nodes - rumor);
  }
  return value;
}

McEstimate finalize(const std::vector<double>& values) {
  McEstimate est;
  est.num_runs = static_cast<std::uint32_t>(values.size());
  double sum = 0.0;
  for (const double v : values) sum += v;
  est.value = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - est.value) * (v - est.value);
    est.std_error = std::sqrt(ss / (static_cast<double>(values.size() - 1) *
                                    static_cast<double>(values.size())));
  }
  return est;
}

}  // namespace

LayerOutcome simulate_layer(const Graph& g, const FeatureModel& fm, LayerId layer,
                            const CascadeSeeds& seeds, RngStream& rng) {
  if (layer >= fm.num_features) throw std::out_of_range("simulate_layer: layer out of range");
  seeds.validate(g.num_nodes, fm.num_features);
  SimWorkspace ws(g.num_nodes);
  std::vector<double> p(g.num_edges);
  for (EdgeId e = 0; e < g.num_edges; ++e) p[e] = edge_prob(g, fm, e, layer);
  run_layer(g, seeds.rumor_layers[layer], seeds.positive_users,
            [&](EdgeId e) { return rng.next_double() < p[e]; }, ws);
  LayerOutcome out;
  out.status.resize(g.num_nodes, CascadeStatus::kNone);
  for (NodeId v = 0; v < g.num_nodes; ++v) out.status[v] = ws.status_of(v);
  return out;
}

bool user_activation(const FeatureModel& fm, std::span<const bool> accepted, double theta) {
  if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("user_activation: theta outside [0,1]");
  if (accepted.size() != fm.num_features)
    throw std::invalid_argument("user_activation: accepted vector length != feature count");
  double total = 0.0;
  for (LayerId i = 0; i < fm.num_features; ++i)
    if (accepted[i]) total += fm.weights[i];
  return total >= theta;
}

McEstimate evaluate_f_mc_serial(const Graph& g, const FeatureModel& fm,
                                const CascadeSeeds& seeds, std::uint32_t num,
                                std::uint64_t seed, std::uint64_t stream_salt) {
  if (num < 1) throw std::invalid_argument("evaluate_f_mc: num must be >= 1");
  seeds.validate(g.num_nodes, fm.num_features);
  const auto probs = edge_prob_table(g, fm);
  std::vector<double> values(num);
  SimWorkspace ws(g.num_nodes);
  for (std::uint32_t j = 0; j < num; ++j) {
    RngStream rng(seed, stream_salt, j);
    values[j] = run_value(g, fm, probs, seeds, rng, ws);
  }
  return finalize(values);
}

McEstimate evaluate_f_mc(const Graph& g, const FeatureModel& fm, const CascadeSeeds& seeds,
                         std::uint32_t num, std::uint64_t seed, std::uint64_t stream_salt) {
  if (num < 1) throw std::invalid_argument("evaluate_f_mc: num must be >= 1");
  seeds.validate(g.num_nodes, fm.num_features);
  const auto probs = edge_prob_table(g, fm);
  std::vector<double> values(num);
#pragma omp parallel
  {
    SimWorkspace ws(g.num_nodes);
#pragma omp for schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(num); ++j) {
      RngStream rng(seed, stream_salt, static_cast<std::uint64_t>(j));
      values[j] = run_value(g, fm, probs, seeds, rng, ws);
    }
  }
  return finalize(values);
}

double evaluate_f_exact(const Graph& g, const FeatureModel& fm, const CascadeSeeds& seeds) {
  seeds.validate(g.num_nodes, fm.num_features);
  const std::uint64_t cost =
      static_cast<std::uint64_t>(fm.num_features) * static_cast<std::uint64_t>(g.num_edges);
  if (cost > kExactGuard)
    throw std::invalid_argument("evaluate_f_exact: instance too large (r*m > guard)");

  const auto probs = edge_prob_table(g, fm);
  SimWorkspace ws(g.num_nodes);
  double f = 0.0;
  for (LayerId i = 0; i < fm.num_features; ++i) {
    const auto& p = probs[i];
    double layer_value = 0.0;
    const std::uint32_t num_masks = 1u << g.num_edges;
    for (std::uint32_t mask = 0; mask < num_masks; ++mask) {
      double pr = 1.0;
      for (EdgeId e = 0; e < g.num_edges; ++e)
        pr *= (mask >> e & 1u) ? p[e] : 1.0 - p[e];
      if (pr == 0.0) continue;
      const std::uint32_t rumor = run_layer(
          g, seeds.rumor_layers[i], seeds.positive_users,
          [mask](EdgeId e) { return (mask >> e & 1u) != 0; }, ws);
      layer_value += pr * static_cast<double>(g.num_nodes - rumor);
    }
    f += fm.weights[i] * layer_value;
  }
  return f;
}

}  // namespace mfrb
