#include "mfrb/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "mfrb/diffusion.hpp"

namespace mfrb {

SolverParams SolverParams::derive(std::uint32_t k, double eps, double ell, NodeId num_nodes,
                                  LayerId num_features, std::uint64_t num_rumor) {
  if (k < 1) throw std::invalid_argument("solver: k must be >= 1");
  if (num_rumor + k > num_nodes) throw std::invalid_argument("solver: k exceeds n - |S_r|");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("solver: eps outside (0,1)");
  if (!(ell > 0.0)) throw std::invalid_argument("solver: ell must be positive");

  SolverParams p;
  p.k = k;
  p.eps = eps;
  p.ell = ell;
  p.num_rumor = num_rumor;
  p.eps_prime = std::sqrt(2.0) * eps;
  p.eps12 = eps / (2.0 - 1.0 / std::exp(1.0));
  const double n_pow_ell = std::pow(static_cast<double>(num_nodes), ell);
  p.delta12 = 1.0 / (2.0 * n_pow_ell);
  p.delta3 = 1.0 / (n_pow_ell * std::log2(static_cast<double>(num_nodes) * num_features));
  return p;
}

double log_binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) throw std::invalid_argument("log_binomial: b > a");
  b = std::min(b, a - b);
  if (b == 0) return 0.0;
  // small b: direct summation; the log-gamma difference cancels ~10 digits
  // when a is huge and b tiny
  if (b <= 4096) {
    double sum = 0.0;
    for (std::uint64_t j = 1; j <= b; ++j)
      sum += std::log(static_cast<double>(a - b + j)) - std::log(static_cast<double>(j));
    return sum;
  }
  return std::lgamma(static_cast<double>(a) + 1.0) - std::lgamma(static_cast<double>(b) + 1.0) -
         std::lgamma(static_cast<double>(a - b) + 1.0);
}

double compute_lambda_prime(NodeId n, LayerId r, double w_bar, double eps_prime,
                            std::uint32_t k, std::uint64_t n_r, double ell) {
  const double nr = static_cast<double>(n) * r;
  // log(1/delta3) expanded in log space: ell*ln n + ln log2(n r)
  const double log_inv_delta3 =
      ell * std::log(static_cast<double>(n)) + std::log(std::log2(nr));
  const double log_term = log_binomial(n - n_r, k) + log_inv_delta3;
  return nr * (2.0 * w_bar + (2.0 / 3.0) * eps_prime) * log_term / (eps_prime * eps_prime);
}

double compute_lambda_star(NodeId n, LayerId r, double w_bar, double eps, std::uint32_t k,
                           std::uint64_t n_r, double ell) {
  const double nr = static_cast<double>(n) * r;
  const double c = 2.0 - 1.0 / std::exp(1.0);
  const double log_term = log_binomial(n - n_r, k) + std::log(2.0) +
                          ell * std::log(static_cast<double>(n));
  return 2.0 * nr * w_bar * c * (c + eps / (3.0 * w_bar)) * log_term / (eps * eps);
}

GreedySelection node_selection(const SamplePool& pool, std::uint32_t k,
                               std::span<const NodeId> forbidden_sorted) {
  if (pool.size() == 0) throw std::invalid_argument("node_selection: empty pool");
  const NodeId n = pool.num_nodes();
  if (static_cast<std::uint64_t>(k) + forbidden_sorted.size() > n)
    throw std::invalid_argument("node_selection: k exceeds allowed nodes");

  std::vector<double> gain(n, 0.0);
  for (NodeId u = 0; u < n; ++u)
    for (const std::uint32_t j : pool.samples_with(u)) gain[u] += pool[j].weight;

  std::vector<std::uint8_t> covered(pool.size(), 0);
  std::vector<std::uint8_t> taken(n, 0);
  for (const NodeId u : forbidden_sorted) taken[u] = 1;

  GreedySelection sel;
  sel.seeds.reserve(k);
  double covered_weight = pool.full_weight();  // full samples fall to the first pick
  for (std::uint32_t round = 0; round < k; ++round) {
    NodeId best = n;
    double best_gain = -1.0;
    for (NodeId u = 0; u < n; ++u) {
      if (taken[u]) continue;
      if (gain[u] > best_gain) {
        best_gain = gain[u];
        best = u;
      }
    }
    taken[best] = 1;
    sel.seeds.push_back(best);
    covered_weight += best_gain;
    for (const std::uint32_t j : pool.samples_with(best)) {
      if (covered[j]) continue;
      covered[j] = 1;
      for (const NodeId v : pool[j].users) gain[v] -= pool[j].weight;
    }
  }
  sel.coverage = covered_weight / static_cast<double>(pool.size());
  return sel;
}

SamplePool sampling_phase(const Graph& g, const FeatureModel& fm, const CascadeSeeds& seeds,
                          const SolverParams& params, std::uint64_t seed,
                          SamplingStats* stats_out) {
  seeds.validate(g.num_nodes, fm.num_features);
  const NodeId n = g.num_nodes;
  const LayerId r = fm.num_features;
  const double nr = static_cast<double>(n) * r;
  const double w_bar = fm.max_weight();
  const auto probs = edge_prob_table(g, fm);

  SamplingStats stats;
  stats.lambda_prime = compute_lambda_prime(n, r, w_bar, params.eps_prime, params.k,
                                            params.num_rumor, params.ell);
  stats.lambda_star =
      compute_lambda_star(n, r, w_bar, params.eps, params.k, params.num_rumor, params.ell);

  SamplePool working(n, r);
  const auto max_iter = static_cast<std::uint32_t>(
      std::max(0.0, std::ceil(std::log2(nr)) - 1.0));
  double lb = static_cast<double>(params.k);  // every positive seed contributes exactly 1
  double last_tested = 0.0;
  for (std::uint32_t i = 1; i <= max_iter; ++i) {
    ++stats.iterations;
    const double x_i = nr * std::ldexp(1.0, -static_cast<int>(i));
    const double theta_i = stats.lambda_prime / x_i;
    const auto target = static_cast<std::uint64_t>(std::floor(theta_i)) + 1;
    if (working.size() < target)
      append_samples(working, g, fm, probs, seeds, seed, salt::kWorkingPool, working.size(),
                     target - working.size());
    const GreedySelection sel = node_selection(working, params.k, seeds.rumor_users);
    last_tested = nr * sel.coverage / (1.0 + params.eps_prime);
    if (nr * sel.coverage >= (1.0 + params.eps_prime) * x_i) {
      lb = last_tested;
      stats.loop_broke = true;
      break;
    }
  }
  if (!stats.loop_broke) lb = std::max(lb, last_tested);

  stats.lower_bound = lb;
  stats.working_pool_size = working.size();
  stats.theta = static_cast<std::uint64_t>(std::ceil(stats.lambda_star / lb));
  if (stats.theta < 1) stats.theta = 1;

  // fresh pool: the search pool is conditioned on its own stopping test
  SamplePool fresh(n, r);
  append_samples(fresh, g, fm, probs, seeds, seed, salt::kFinalPool, 0, stats.theta);
  if (stats_out) *stats_out = stats;
  return fresh;
}

Solution revised_imm(const Graph& g, const FeatureModel& fm, const CascadeSeeds& seeds,
                     const SolverParams& params, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  Solution sol;

  const auto t0 = clock::now();
  SamplePool pool = sampling_phase(g, fm, seeds, params, seed, &sol.stats);
  const auto t1 = clock::now();
  GreedySelection sel = node_selection(pool, params.k, seeds.rumor_users);
  const auto t2 = clock::now();

  std::sort(sel.seeds.begin(), sel.seeds.end());
  sol.seeds = std::move(sel.seeds);
  sol.w_estimate = estimate_W(pool, sol.seeds);
  sol.scaled_estimate =
      static_cast<double>(g.num_nodes) * fm.num_features * sol.w_estimate;
  sol.pool_size = pool.size();
  sol.lower_bound = sol.stats.lower_bound;
  sol.sampling_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  sol.selection_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  return sol;
}

}  // namespace mfrb
