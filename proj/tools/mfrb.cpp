#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

#include "mfrb/baselines.hpp"
#include "mfrb/diffusion.hpp"
#include "mfrb/experiment.hpp"
#include "mfrb/solver.hpp"

namespace {

// Option values are kept as strings and funneled through apply_config_entry,
// so the config file and the command line share one parser. Flags win
// because they are applied after the file.
struct CommonOpts {
  std::string config;
  std::string dataset, scheme, probs, weights, rumor_size, rumor_prob;
  std::string eps, ell, mc_num, seed, jobs, out;
  bool symmetrize = false;
  bool timing = false;
  CLI::App* cmd = nullptr;

  void attach(CLI::App& c) {
    cmd = &c;
    c.add_option("--config", config, "key=value config file; flags override it");
    c.add_option("--dataset", dataset, "edge list file (u v per line)");
    c.add_option("--scheme", scheme, "edge probability scheme: cp or wc");
    c.add_option("--probs", probs, "per-feature probabilities, e.g. 0.4,0.5 (cp only)");
    c.add_option("--weights", weights, "per-feature weights summing to 1, e.g. 0.3,0.7");
    c.add_option("--rumor-size", rumor_size, "rumor seed count (top out-degree users)");
    c.add_option("--rumor-prob", rumor_prob, "per-feature rumor acceptance probability");
    c.add_option("--eps", eps, "approximation parameter");
    c.add_option("--ell", ell, "confidence exponent");
    c.add_option("--mc-num", mc_num, "Monte-Carlo simulations per oracle evaluation");
    c.add_option("--seed", seed, "master RNG seed");
    c.add_option("--jobs", jobs, "parallel (algorithm, k) cells");
    c.add_option("--out", out, "output CSV path");
    c.add_flag("--symmetrize", symmetrize, "add the reverse of every input edge");
    c.add_flag("--timing", timing, "record wall times (CSV is no longer replayable)");
  }

  void apply(mfrb::ExperimentConfig& cfg) const {
    if (!config.empty()) mfrb::apply_config_file(cfg, config);
    auto maybe = [this, &cfg](const char* flag, const char* key, const std::string& value) {
      if (cmd->count(flag)) mfrb::apply_config_entry(cfg, key, value);
    };
    maybe("--dataset", "dataset", dataset);
    maybe("--scheme", "scheme", scheme);
    maybe("--probs", "probs", probs);
    maybe("--weights", "weights", weights);
    maybe("--rumor-size", "rumor_size", rumor_size);
    maybe("--rumor-prob", "rumor_prob", rumor_prob);
    maybe("--eps", "eps", eps);
    maybe("--ell", "ell", ell);
    maybe("--mc-num", "mc_num", mc_num);
    maybe("--seed", "seed", seed);
    maybe("--jobs", "jobs", jobs);
    maybe("--out", "out", out);
    if (cmd->count("--symmetrize")) mfrb::apply_config_entry(cfg, "symmetrize", "1");
    if (cmd->count("--timing")) mfrb::apply_config_entry(cfg, "timing", "1");
  }
};

std::vector<mfrb::NodeId> map_original_ids(const mfrb::Graph& g, const std::string& list) {
  std::vector<mfrb::NodeId> out;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::int64_t original = 0;
    try {
      original = std::stoll(item);
    } catch (const std::exception&) {
      throw mfrb::ConfigError("bad node id '" + item + "'");
    }
    const auto dense = mfrb::find_dense_id(g, original);
    if (dense == g.num_nodes)
      throw mfrb::ConfigError("node id " + item + " is not in the dataset");
    out.push_back(dense);
  }
  return out;
}

int run_solve(const mfrb::ExperimentConfig& cfg, const std::string& algo, std::uint32_t k) {
  using clock = std::chrono::steady_clock;
  const mfrb::Instance inst = mfrb::build_instance(cfg);
  const mfrb::Graph& g = inst.parsed.graph;
  if (k < 1 || k + cfg.rumor_size > g.num_nodes)
    throw mfrb::ConfigError("k outside [1, n - rumor_size]");

  std::cout << "n=" << g.num_nodes << " m=" << g.num_edges << " r=" << inst.fm.num_features
            << " |S_r|=" << inst.seeds.rumor_users.size() << '\n';

  std::vector<mfrb::NodeId> seeds;
  const auto t0 = clock::now();
  if (algo == "revised-imm") {
    const auto params =
        mfrb::SolverParams::derive(k, cfg.eps, cfg.ell, g.num_nodes, inst.fm.num_features,
                                   inst.seeds.rumor_users.size());
    const mfrb::Solution sol = mfrb::revised_imm(g, inst.fm, inst.seeds, params, cfg.seed);
    seeds = sol.seeds;
    std::cout << "pool_size=" << sol.pool_size << " lower_bound=" << sol.lower_bound
              << " estimate=" << sol.scaled_estimate << '\n';
  } else if (algo == "greedy") {
    seeds = mfrb::greedy_mc(g, inst.fm, inst.seeds, k, cfg.mc_num, cfg.seed);
  } else if (algo == "proximity") {
    seeds = mfrb::proximity(g, inst.seeds, k);
  } else if (algo == "random") {
    seeds = mfrb::random_baseline(g, inst.seeds, k, cfg.seed);
  } else {
    throw mfrb::ConfigError("unknown algorithm '" + algo + "'");
  }
  const auto t1 = clock::now();

  std::cout << "seeds:";
  for (const auto u : seeds) std::cout << ' ' << g.original_id[u];
  std::cout << '\n';

  const auto oracle = mfrb::evaluate_f_mc(g, inst.fm, inst.seeds.with_positive(seeds),
                                          cfg.mc_num, cfg.seed, mfrb::salt::kEvaluation);
  std::cout << "f_mc=" << oracle.value << " (se " << oracle.std_error << ", num "
            << oracle.num_runs << ")\n";
  std::cout << "selection_ms=" << std::chrono::duration<double, std::milli>(t1 - t0).count()
            << '\n';
  return 0;
}

int run_oracle(const mfrb::ExperimentConfig& cfg, const std::string& pos_list, bool exact) {
  const mfrb::Instance inst = mfrb::build_instance(cfg);
  const mfrb::Graph& g = inst.parsed.graph;
  const auto seeds = inst.seeds.with_positive(map_original_ids(g, pos_list));
  seeds.validate(g.num_nodes, inst.fm.num_features);
  if (exact) {
    std::cout << "f_exact=" << mfrb::evaluate_f_exact(g, inst.fm, seeds) << '\n';
  } else {
    const auto est =
        mfrb::evaluate_f_mc(g, inst.fm, seeds, cfg.mc_num, cfg.seed, mfrb::salt::kEvaluation);
    std::cout << "f_mc=" << est.value << " (se " << est.std_error << ", num " << est.num_runs
              << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-feature rumor blocking: sampling solver, baselines, experiments"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "select positive seeds for one budget");
  CommonOpts solve_opts;
  solve_opts.attach(*solve);
  std::uint32_t solve_k = 1;
  std::string solve_algo = "revised-imm";
  solve->add_option("--k", solve_k, "positive seed budget");
  solve->add_option("--algo", solve_algo, "revised-imm | greedy | proximity | random");

  auto* experiment = app.add_subcommand("experiment", "run algorithms over a budget sweep");
  CommonOpts exp_opts;
  exp_opts.attach(*experiment);
  std::string exp_budgets, exp_algos;
  experiment->add_option("--budgets", exp_budgets, "budget list, e.g. 1..20 or 1,5,10");
  experiment->add_option("--algo", exp_algos,
                         "comma-separated algorithms (revised-imm,greedy,proximity,random)");

  auto* oracle = app.add_subcommand("oracle", "evaluate f(S_p) for explicit positive seeds");
  CommonOpts oracle_opts;
  oracle_opts.attach(*oracle);
  std::string oracle_pos;
  bool oracle_exact = false;
  oracle->add_option("--pos-seeds", oracle_pos, "comma-separated user ids (original ids)");
  oracle->add_flag("--exact", oracle_exact, "enumerate realizations instead of Monte-Carlo");

  try {
    app.parse(argc, argv);
    mfrb::ExperimentConfig cfg;
    if (solve->parsed()) {
      solve_opts.apply(cfg);
      return run_solve(cfg, solve_algo, solve_k);
    }
    if (experiment->parsed()) {
      exp_opts.apply(cfg);
      if (experiment->count("--budgets")) mfrb::apply_config_entry(cfg, "budgets", exp_budgets);
      if (experiment->count("--algo")) mfrb::apply_config_entry(cfg, "algorithms", exp_algos);
      const auto result = mfrb::run_experiment(cfg);
      std::cout << "rows=" << result.rows.size() << " csv=" << result.csv_path
                << " plot=" << result.plot_path << '\n';
      return 0;
    }
    if (oracle->parsed()) {
      oracle_opts.apply(cfg);
      return run_oracle(cfg, oracle_pos, oracle_exact);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const mfrb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
