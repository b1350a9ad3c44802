#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "mfrb/experiment.hpp"
#include "mfrb/synth.hpp"
#include "support.hpp"

using namespace mfrb;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("rumor seeding picks the top out-degrees") {
  // star center
  const Graph star = test::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  CHECK(select_rumor_seeds(star, 1) == std::vector<NodeId>{0});

  // all degrees equal: ties go to the lowest ids
  const Graph cycle = test::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(select_rumor_seeds(cycle, 3) == std::vector<NodeId>{0, 1, 2});

  // degree sequence 5,4,4,1: the tie at 4 resolves to node 1
  const Graph mixed = test::from_edges(
      10, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5},
           {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 4}});
  CHECK(select_rumor_seeds(mixed, 2) == std::vector<NodeId>{0, 1});
  CHECK_THROWS_AS(select_rumor_seeds(mixed, 10), ConfigError);
}

TEST_CASE("partial activation endpoints") {
  const std::vector<NodeId> rumor = {3, 5, 9};
  RngStream rng(1, salt::kPartialActivation, 0);
  auto layers = partial_activate(rumor, 2, 1.0, rng);
  CHECK(layers[0] == rumor);
  CHECK(layers[1] == rumor);
  layers = partial_activate(rumor, 2, 0.0, rng);
  CHECK(layers[0].empty());
  CHECK(layers[1].empty());
}

TEST_CASE("partial activation rate stays near its target") {
  std::vector<NodeId> rumor(20);
  for (NodeId u = 0; u < 20; ++u) rumor[u] = u;
  const int reps = 300;
  std::vector<std::uint64_t> accepted(3, 0);
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(rep, salt::kPartialActivation, 0);
    const auto layers = partial_activate(rumor, 3, 0.8, rng);
    for (int i = 0; i < 3; ++i) accepted[i] += layers[i].size();
  }
  const double trials = 20.0 * reps;
  const double sigma = std::sqrt(trials * 0.8 * 0.2);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(static_cast<double>(accepted[i]) - 0.8 * trials) <= 3.0 * sigma);
}

TEST_CASE("config entries parse and reject garbage") {
  ExperimentConfig cfg;
  apply_config_entry(cfg, "budgets", "1..4,10");
  CHECK(cfg.budgets == std::vector<std::uint32_t>{1, 2, 3, 4, 10});
  apply_config_entry(cfg, "weights", "0.3,0.7");
  CHECK(cfg.weights == std::vector<double>{0.3, 0.7});
  apply_config_entry(cfg, "algorithms", "proximity,random");
  CHECK(cfg.algorithms == std::vector<std::string>{"proximity", "random"});
  apply_config_entry(cfg, "timing", "on");
  CHECK(cfg.timing);

  CHECK_THROWS_AS(apply_config_entry(cfg, "nope", "1"), ConfigError);
  CHECK_THROWS_AS(apply_config_entry(cfg, "eps", "fast"), ConfigError);
  CHECK_THROWS_AS(apply_config_entry(cfg, "budgets", "5..2"), ConfigError);
}

TEST_CASE("config file applies and flags override") {
  write_file("tmp_cfg.txt", "# comment\neps = 0.2\nmc_num = 64\nscheme= wc\n");
  ExperimentConfig cfg;
  apply_config_file(cfg, "tmp_cfg.txt");
  CHECK(cfg.eps == 0.2);
  CHECK(cfg.mc_num == 64);
  CHECK(cfg.scheme == "wc");
  apply_config_entry(cfg, "eps", "0.3");  // what the CLI does for overrides
  CHECK(cfg.eps == 0.3);
  CHECK_THROWS_AS(apply_config_file(cfg, "missing.txt"), ConfigError);
  write_file("tmp_cfg_bad.txt", "eps\n");
  CHECK_THROWS_AS(apply_config_file(cfg, "tmp_cfg_bad.txt"), ConfigError);
}

namespace {

ExperimentConfig path_config() {
  write_file("tmp_path.edges", "0 1\n1 2\n2 3\n");
  ExperimentConfig cfg;
  cfg.dataset = "tmp_path.edges";
  cfg.scheme = "cp";
  cfg.probs = {1.0, 0.0};
  cfg.weights = {0.4, 0.6};
  cfg.rumor_size = 1;
  cfg.rumor_prob = 1.0;
  cfg.budgets = {1};
  cfg.algorithms = {"revised-imm"};
  cfg.mc_num = 64;
  cfg.seed = 5;
  cfg.out = "tmp_path.csv";
  return cfg;
}

}  // namespace

TEST_CASE("end-to-end walkthrough instance") {
  const auto cfg = path_config();
  const auto result = run_experiment(cfg);
  REQUIRE(result.rows.size() == 1);
  const ReportRow& row = result.rows[0];
  CHECK(row.algorithm == "revised-imm");
  CHECK(row.k == 1);
  // deterministic probabilities: the oracle is exact
  CHECK(row.f_estimate == doctest::Approx(3.0));
  REQUIRE(row.estimator_value.has_value());
  CHECK(*row.estimator_value == doctest::Approx(3.0).epsilon(0.05));
  REQUIRE(row.relative_error.has_value());
  CHECK(*row.relative_error < 0.05);
  CHECK(row.pool_size.has_value());
  CHECK(row.wall_time_ms == 0.0);  // timing off by default

  const std::string csv = slurp("tmp_path.csv");
  CHECK(csv.find("dataset,scheme,r,algorithm,k,f_estimate,estimator_value,relative_error,"
                 "pool_size,wall_time_ms,rng_seed") == 0);
  const std::string plot = slurp(result.plot_path);
  CHECK(plot.find("f:revised-imm\t1\t") != std::string::npos);
}

TEST_CASE("experiment reruns are byte-identical") {
  auto cfg = path_config();
  cfg.algorithms = {"revised-imm", "proximity", "random"};
  cfg.budgets = {1, 2};
  run_experiment(cfg);
  const std::string csv1 = slurp("tmp_path.csv"), plot1 = slurp("tmp_path.csv.plot");
  run_experiment(cfg);
  CHECK(csv1 == slurp("tmp_path.csv"));
  CHECK(plot1 == slurp("tmp_path.csv.plot"));
  CHECK(!csv1.empty());
}

TEST_CASE("cells can run in parallel without changing the output") {
  auto cfg = path_config();
  cfg.algorithms = {"proximity", "random", "revised-imm"};
  cfg.budgets = {1, 2};
  cfg.out = "tmp_jobs1.csv";
  run_experiment(cfg);
  cfg.jobs = 3;
  cfg.out = "tmp_jobs3.csv";
  run_experiment(cfg);
  CHECK(slurp("tmp_jobs1.csv") == slurp("tmp_jobs3.csv"));
}

TEST_CASE("rows come out sorted by algorithm then budget") {
  auto cfg = path_config();
  cfg.algorithms = {"random", "proximity"};
  cfg.budgets = {2, 1};
  cfg.out = "tmp_sorted.csv";
  const auto result = run_experiment(cfg);
  REQUIRE(result.rows.size() == 4);
  CHECK(result.rows[0].algorithm == "proximity");
  CHECK(result.rows[0].k == 1);
  CHECK(result.rows[1].algorithm == "proximity");
  CHECK(result.rows[1].k == 2);
  CHECK(result.rows[2].algorithm == "random");
  CHECK(result.rows[3].k == 2);
}

TEST_CASE("empty budget sweep emits a header-only CSV") {
  auto cfg = path_config();
  cfg.budgets = {};
  cfg.out = "tmp_empty.csv";
  const auto result = run_experiment(cfg);
  CHECK(result.rows.empty());
  const std::string csv = slurp("tmp_empty.csv");
  CHECK(csv ==
        "dataset,scheme,r,algorithm,k,f_estimate,estimator_value,relative_error,pool_size,"
        "wall_time_ms,rng_seed\n");
}

TEST_CASE("infeasible configurations are rejected before running") {
  auto cfg = path_config();
  cfg.budgets = {50};
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = path_config();
  cfg.rumor_size = 4;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = path_config();
  cfg.weights = {0.5, 0.6};
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = path_config();
  cfg.algorithms = {"mystery"};
  CHECK_THROWS(run_experiment(cfg));
}
