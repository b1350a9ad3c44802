#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfrb/cascade.hpp"
#include "mfrb/feature_model.hpp"
#include "mfrb/graph.hpp"
#include "mfrb/rng.hpp"

namespace mfrb {

// Invalid user input (flags, config file, infeasible instance). The CLI maps
// this to exit code 2; anything else that escapes is a runtime error (1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string dataset;
  bool symmetrize = false;
  std::string scheme = "cp";  // cp | wc
  std::vector<double> probs;    // per-feature, cp only
  std::vector<double> weights;  // per-feature, defines r
  std::uint32_t rumor_size = 20;
  double rumor_prob = 0.8;
  std::vector<std::uint32_t> budgets;  // default 1..20
  std::vector<std::string> algorithms = {"revised-imm"};
  double eps = 0.1;
  double ell = 1.0;
  std::uint32_t mc_num = 2000;
  std::uint64_t seed = 1;
  std::string out = "results.csv";
  std::uint32_t jobs = 1;
  // CSV output is a pure function of (dataset bytes, config); measured wall
  // time would break that, so the column stays 0 unless explicitly enabled.
  bool timing = false;

  ExperimentConfig() { for (std::uint32_t k = 1; k <= 20; ++k) budgets.push_back(k); }
};

// key=value lines, '#' comments. Unknown keys or unparsable values throw
// ConfigError. CLI flags are applied on top and win.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

struct ReportRow {
  std::string dataset;
  std::string scheme;
  std::uint32_t r = 0;
  std::string algorithm;
  std::uint32_t k = 0;
  double f_estimate = 0.0;
  std::optional<double> estimator_value;   // n*r*W, sampling algorithms only
  std::optional<double> relative_error;    // |f - n*r*W| / f
  std::optional<std::uint64_t> pool_size;
  double wall_time_ms = 0.0;  // selection only, oracle evaluation excluded
  std::uint64_t rng_seed = 0;
};

// Highest out-degree users, ties to the lowest id.
std::vector<NodeId> select_rumor_seeds(const Graph& g, std::uint32_t size);

// Independent Bernoulli(prob) acceptance per (user, layer). One draw per
// experiment; oracle and sampler share the result.
std::vector<std::vector<NodeId>> partial_activate(const std::vector<NodeId>& rumor_users,
                                                  LayerId num_features, double prob,
                                                  RngStream& rng);

// Loaded dataset plus the fixed rumor side of an experiment: graph, feature
// model, rumor seeds with their partial-activation draw. Positive users are
// left empty for the algorithms to fill.
struct Instance {
  ParseResult parsed;
  FeatureModel fm;
  CascadeSeeds seeds;
};

Instance build_instance(const ExperimentConfig& cfg);

struct ExperimentResult {
  std::vector<ReportRow> rows;
  std::string csv_path;
  std::string plot_path;
};

// Full protocol: load dataset, seed the rumor, draw partial activation, run
// every (algorithm, budget) cell, evaluate each selection with a shared
// oracle stream, emit CSV (sorted by algorithm, k) and a long-format plot
// data file next to it.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string rows_to_csv(const std::vector<ReportRow>& rows);

}  // namespace mfrb
