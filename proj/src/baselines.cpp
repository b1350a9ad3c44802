#include "mfrb/baselines.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

#include "mfrb/rng.hpp"

namespace mfrb {

namespace {

std::vector<NodeId> non_rumor_nodes(const Graph& g, const CascadeSeeds& seeds) {
  std::vector<NodeId> out;
  out.reserve(g.num_nodes - seeds.rumor_users.size());
  for (NodeId u = 0; u < g.num_nodes; ++u)
    if (!contains_sorted(seeds.rumor_users, u)) out.push_back(u);
  return out;
}

void check_feasible(const Graph& g, const CascadeSeeds& seeds, std::uint32_t k) {
  if (k < 1 || static_cast<std::uint64_t>(k) + seeds.rumor_users.size() > g.num_nodes)
    throw std::invalid_argument("baseline: infeasible budget k");
}

}  // namespace

std::vector<NodeId> greedy_mc(const Graph& g, const FeatureModel& fm,
                              const CascadeSeeds& seeds, std::uint32_t k, std::uint32_t num,
                              std::uint64_t seed) {
  check_feasible(g, seeds, k);
  if (num < 1) throw std::invalid_argument("greedy_mc: num must be >= 1");
  seeds.validate(g.num_nodes, fm.num_features);

  std::vector<NodeId> chosen;
  chosen.reserve(k);
  for (std::uint32_t round = 0; round < k; ++round) {
    // one evaluation stream family per round, shared by every candidate
    const std::uint64_t round_seed = RngStream(seed, salt::kGreedyRound, round).next_u64();

    std::vector<NodeId> candidates;
    for (NodeId u = 0; u < g.num_nodes; ++u) {
      if (contains_sorted(seeds.rumor_users, u)) continue;
      if (std::find(chosen.begin(), chosen.end(), u) != chosen.end()) continue;
      candidates.push_back(u);
    }

    std::vector<double> value(candidates.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(candidates.size()); ++c) {
      std::vector<NodeId> trial = chosen;
      trial.push_back(candidates[c]);
      value[c] = evaluate_f_mc_serial(g, fm, seeds.with_positive(std::move(trial)), num,
                                      round_seed, salt::kGreedyRound)
                     .value;
    }

    std::size_t best = 0;
    for (std::size_t c = 1; c < candidates.size(); ++c)
      if (value[c] > value[best]) best = c;
    chosen.push_back(candidates[best]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<NodeId> proximity(const Graph& g, const CascadeSeeds& seeds, std::uint32_t k) {
  check_feasible(g, seeds, k);
  auto by_degree = [&g](NodeId a, NodeId b) {
    const auto da = g.out_degree(a), db = g.out_degree(b);
    return da != db ? da > db : a < b;
  };

  std::vector<NodeId> candidates;
  for (const NodeId u : seeds.rumor_users)
    for (const NodeId v : g.out_neighbors(u))
      if (!contains_sorted(seeds.rumor_users, v)) candidates.push_back(v);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::sort(candidates.begin(), candidates.end(), by_degree);

  std::vector<NodeId> picked(candidates.begin(),
                             candidates.begin() + std::min<std::size_t>(k, candidates.size()));
  if (picked.size() < k) {
    std::vector<NodeId> fill = non_rumor_nodes(g, seeds);
    std::erase_if(fill, [&picked](NodeId u) {
      return std::find(picked.begin(), picked.end(), u) != picked.end();
    });
    std::sort(fill.begin(), fill.end(), by_degree);
    picked.insert(picked.end(), fill.begin(), fill.begin() + (k - picked.size()));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<NodeId> random_baseline(const Graph& g, const CascadeSeeds& seeds, std::uint32_t k,
                                    std::uint64_t seed) {
  check_feasible(g, seeds, k);
  std::vector<NodeId> pool = non_rumor_nodes(g, seeds);
  RngStream rng(seed, salt::kRandomBaseline, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + rng.next_below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace mfrb
