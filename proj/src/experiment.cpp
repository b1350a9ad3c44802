#include "mfrb/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mfrb/baselines.hpp"
#include "mfrb/diffusion.hpp"
#include "mfrb/solver.hpp"

namespace mfrb {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + s + "'");
  }
}

std::uint64_t parse_uint(const std::string& s, const std::string& key) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("bad integer value for " + key + ": '" + s + "'");
  return v;
}

// "1,2,5" or "1..20" or a mix: "1..4,10"
std::vector<std::uint32_t> parse_budgets(const std::string& s) {
  std::vector<std::uint32_t> out;
  for (const auto& item : split_list(s)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<std::uint32_t>(parse_uint(item, "budgets")));
    } else {
      const auto lo = parse_uint(item.substr(0, dots), "budgets");
      const auto hi = parse_uint(item.substr(dots + 2), "budgets");
      if (lo > hi) throw ConfigError("bad budget range '" + item + "'");
      for (auto k = lo; k <= hi; ++k) out.push_back(static_cast<std::uint32_t>(k));
    }
  }
  return out;
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ConfigError("bad boolean value for " + key + ": '" + s + "'");
}

}  // namespace

void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "dataset") cfg.dataset = value;
  else if (key == "symmetrize") cfg.symmetrize = parse_bool(value, key);
  else if (key == "scheme") cfg.scheme = value;
  else if (key == "probs") {
    cfg.probs.clear();
    for (const auto& p : split_list(value)) cfg.probs.push_back(parse_double(p, key));
  } else if (key == "weights") {
    cfg.weights.clear();
    for (const auto& w : split_list(value)) cfg.weights.push_back(parse_double(w, key));
  } else if (key == "rumor_size") cfg.rumor_size = static_cast<std::uint32_t>(parse_uint(value, key));
  else if (key == "rumor_prob") cfg.rumor_prob = parse_double(value, key);
  else if (key == "budgets") cfg.budgets = parse_budgets(value);
  else if (key == "algorithms") cfg.algorithms = split_list(value);
  else if (key == "eps") cfg.eps = parse_double(value, key);
  else if (key == "ell") cfg.ell = parse_double(value, key);
  else if (key == "mc_num") cfg.mc_num = static_cast<std::uint32_t>(parse_uint(value, key));
  else if (key == "seed") cfg.seed = parse_uint(value, key);
  else if (key == "out") cfg.out = value;
  else if (key == "jobs") cfg.jobs = static_cast<std::uint32_t>(parse_uint(value, key));
  else if (key == "timing") cfg.timing = parse_bool(value, key);
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::vector<NodeId> select_rumor_seeds(const Graph& g, std::uint32_t size) {
  if (size >= g.num_nodes) throw ConfigError("rumor size must be smaller than n");
  std::vector<NodeId> order(g.num_nodes);
  for (NodeId u = 0; u < g.num_nodes; ++u) order[u] = u;
  std::sort(order.begin(), order.end(), [&g](NodeId a, NodeId b) {
    const auto da = g.out_degree(a), db = g.out_degree(b);
    return da != db ? da > db : a < b;
  });
  order.resize(size);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<std::vector<NodeId>> partial_activate(const std::vector<NodeId>& rumor_users,
                                                  LayerId num_features, double prob,
                                                  RngStream& rng) {
  if (prob < 0.0 || prob > 1.0) throw std::invalid_argument("activation prob outside [0,1]");
  std::vector<std::vector<NodeId>> layers(num_features);
  for (const NodeId u : rumor_users)
    for (LayerId i = 0; i < num_features; ++i)
      if (rng.bernoulli(prob)) layers[i].push_back(u);
  return layers;  // per-layer order follows the sorted rumor list
}

namespace {

FeatureModel build_feature_model(const ExperimentConfig& cfg) {
  if (cfg.weights.empty()) throw ConfigError("weights are required");
  FeatureModel fm;
  if (cfg.scheme == "cp") {
    if (cfg.probs.size() != cfg.weights.size())
      throw ConfigError("cp scheme needs one probability per feature");
    fm = FeatureModel::constant(cfg.weights, cfg.probs);
  } else if (cfg.scheme == "wc") {
    fm = FeatureModel::weighted_cascade(cfg.weights);
  } else {
    throw ConfigError("unknown scheme '" + cfg.scheme + "' (expected cp or wc)");
  }
  const auto violations = validate_feature_model(fm);
  if (!violations.empty()) {
    std::string msg = "invalid feature model:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw ConfigError(msg);
  }
  return fm;
}

struct Cell {
  std::string algorithm;
  std::uint32_t k = 0;
};

ReportRow run_cell(const ExperimentConfig& cfg, const Graph& g, const FeatureModel& fm,
                   const CascadeSeeds& base, const Cell& cell, std::uint32_t algo_index) {
  using clock = std::chrono::steady_clock;
  ReportRow row;
  row.dataset = cfg.dataset;
  row.scheme = cfg.scheme;
  row.r = fm.num_features;
  row.algorithm = cell.algorithm;
  row.k = cell.k;
  row.rng_seed = cfg.seed;

  // per-cell stream family so cells can run in any order or in parallel
  const std::uint64_t cell_seed =
      RngStream(cfg.seed, 0xce11u * (algo_index + 1), cell.k).next_u64();

  std::vector<NodeId> selected;
  const auto t0 = clock::now();
  if (cell.algorithm == "revised-imm") {
    const auto params =
        SolverParams::derive(cell.k, cfg.eps, cfg.ell, g.num_nodes, fm.num_features,
                             base.rumor_users.size());
    const Solution sol = revised_imm(g, fm, base, params, cell_seed);
    selected = sol.seeds;
    row.estimator_value = sol.scaled_estimate;
    row.pool_size = sol.pool_size;
  } else if (cell.algorithm == "greedy") {
    selected = greedy_mc(g, fm, base, cell.k, cfg.mc_num, cell_seed);
  } else if (cell.algorithm == "proximity") {
    selected = proximity(g, base, cell.k);
  } else if (cell.algorithm == "random") {
    selected = random_baseline(g, base, cell.k, cell_seed);
  } else {
    throw ConfigError("unknown algorithm '" + cell.algorithm + "'");
  }
  const auto t1 = clock::now();
  if (cfg.timing)
    row.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  // shared oracle streams: every cell sees the same realizations
  row.f_estimate = evaluate_f_mc(g, fm, base.with_positive(selected), cfg.mc_num, cfg.seed,
                                 salt::kEvaluation)
                       .value;
  if (row.estimator_value && row.f_estimate > 0.0)
    row.relative_error = std::abs(row.f_estimate - *row.estimator_value) / row.f_estimate;
  return row;
}

}  // namespace

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::string csv =
      "dataset,scheme,r,algorithm,k,f_estimate,estimator_value,relative_error,pool_size,"
      "wall_time_ms,rng_seed\n";
  for (const ReportRow& row : rows) {
    csv += row.dataset + ',' + row.scheme + ',' + std::to_string(row.r) + ',' +
           row.algorithm + ',' + std::to_string(row.k) + ',' + format_double(row.f_estimate) +
           ',';
    csv += row.estimator_value ? format_double(*row.estimator_value) : "";
    csv += ',';
    csv += row.relative_error ? format_double(*row.relative_error) : "";
    csv += ',';
    csv += row.pool_size ? std::to_string(*row.pool_size) : "";
    csv += ',';
    csv += format_double(row.wall_time_ms) + ',' + std::to_string(row.rng_seed) + '\n';
  }
  return csv;
}

Instance build_instance(const ExperimentConfig& cfg) {
  if (cfg.dataset.empty()) throw ConfigError("dataset is required");
  Instance inst;
  inst.parsed = parse_edge_list_file(cfg.dataset, {.symmetrize = cfg.symmetrize});
  if (inst.parsed.self_loops_dropped || inst.parsed.duplicates_dropped)
    std::fprintf(stderr, "[warn] %s: dropped %llu self-loops, %llu duplicate edges\n",
                 cfg.dataset.c_str(),
                 static_cast<unsigned long long>(inst.parsed.self_loops_dropped),
                 static_cast<unsigned long long>(inst.parsed.duplicates_dropped));
  inst.fm = build_feature_model(cfg);
  if (cfg.rumor_size >= inst.parsed.graph.num_nodes)
    throw ConfigError("rumor size must be smaller than n");
  inst.seeds.rumor_users = select_rumor_seeds(inst.parsed.graph, cfg.rumor_size);
  RngStream activation_rng(cfg.seed, salt::kPartialActivation, 0);
  inst.seeds.rumor_layers = partial_activate(inst.seeds.rumor_users, inst.fm.num_features,
                                             cfg.rumor_prob, activation_rng);
  inst.seeds.validate(inst.parsed.graph.num_nodes, inst.fm.num_features);
  return inst;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const Instance inst = build_instance(cfg);
  const Graph& g = inst.parsed.graph;
  const FeatureModel& fm = inst.fm;
  const CascadeSeeds& base = inst.seeds;

  for (const auto k : cfg.budgets)
    if (k < 1 || k + cfg.rumor_size > g.num_nodes)
      throw ConfigError("budget " + std::to_string(k) + " outside [1, n - rumor_size]");
  if (cfg.algorithms.empty()) throw ConfigError("no algorithms selected");

  std::vector<Cell> cells;
  std::vector<std::uint32_t> algo_index;
  for (std::uint32_t a = 0; a < cfg.algorithms.size(); ++a)
    for (const auto k : cfg.budgets) {
      cells.push_back({cfg.algorithms[a], k});
      algo_index.push_back(a);
    }

  ExperimentResult result;
  result.rows.resize(cells.size());
  if (cfg.jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(cells.size()); ++c)
      result.rows[c] = run_cell(cfg, g, fm, base, cells[c], algo_index[c]);
  } else {
    for (std::size_t c = 0; c < cells.size(); ++c)
      result.rows[c] = run_cell(cfg, g, fm, base, cells[c], algo_index[c]);
  }

  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     return a.algorithm != b.algorithm ? a.algorithm < b.algorithm : a.k < b.k;
                   });

  if (!cfg.out.empty()) {
    std::ofstream csv(cfg.out, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + cfg.out);
    csv << rows_to_csv(result.rows);
    result.csv_path = cfg.out;

    result.plot_path = cfg.out + ".plot";
    std::ofstream plot(result.plot_path, std::ios::binary);
    if (!plot) throw std::runtime_error("cannot write " + result.plot_path);
    plot << "series\tk\tvalue\n";
    for (const ReportRow& row : result.rows)
      plot << "f:" << row.algorithm << '\t' << row.k << '\t' << format_double(row.f_estimate)
           << '\n';
    for (const ReportRow& row : result.rows)
      if (row.pool_size)
        plot << "pool_size:" << row.algorithm << '\t' << row.k << '\t' << *row.pool_size
             << '\n';
    for (const ReportRow& row : result.rows)
      if (row.relative_error)
        plot << "relative_error:" << row.algorithm << '\t' << row.k << '\t'
             << format_double(*row.relative_error) << '\n';
  }
  return result;
}

}  // namespace mfrb
