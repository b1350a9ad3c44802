#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <fstream>

#include "mfrb/diffusion.hpp"
#include "mfrb/experiment.hpp"
#include "mfrb/sampler.hpp"
#include "mfrb/synth.hpp"

// Times the serial reference implementations against the OpenMP kernels on
// the same inputs and verifies both produce identical results.

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool pools_equal(const mfrb::SamplePool& a, const mfrb::SamplePool& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!(a[j] == b[j])) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP benchmark for sampling and simulation kernels"};
  std::uint32_t nodes = 400, edges = 1000, rumor = 20, mc_num = 2000;
  std::uint64_t samples = 50000, seed = 7;
  int threads = 0;
  std::string dataset, dump_graph;
  bool skip_bench = false;
  app.add_option("--nodes", nodes, "synthetic graph size");
  app.add_option("--edges", edges, "synthetic edge count");
  app.add_option("--dataset", dataset, "use an edge list file instead of a synthetic graph");
  app.add_option("--rumor-size", rumor, "rumor seed count");
  app.add_option("--samples", samples, "reverse samples to generate");
  app.add_option("--mc-num", mc_num, "Monte-Carlo runs to evaluate");
  app.add_option("--seed", seed, "master RNG seed");
  app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");
  app.add_option("--dump-graph", dump_graph, "write the synthetic graph as an edge list and exit");
  app.add_flag("--skip-bench", skip_bench, "only dump the graph");
  CLI11_PARSE(app, argc, argv);

  mfrb::Graph g;
  if (dataset.empty()) {
    g = mfrb::random_graph(nodes, edges, seed);
  } else {
    g = mfrb::parse_edge_list_file(dataset).graph;
  }
  if (!dump_graph.empty()) {
    std::ofstream out(dump_graph, std::ios::binary);
    out << mfrb::serialize_edge_list(g);
    std::printf("wrote %s (n=%u m=%u)\n", dump_graph.c_str(), g.num_nodes, g.num_edges);
    if (skip_bench) return 0;
  }
  if (threads > 0) omp_set_num_threads(threads);

  const auto fm = mfrb::FeatureModel::constant({0.3, 0.7}, {0.4, 0.5});
  mfrb::CascadeSeeds seeds;
  seeds.rumor_users = mfrb::select_rumor_seeds(g, rumor);
  mfrb::RngStream act(seed, mfrb::salt::kPartialActivation, 0);
  seeds.rumor_layers = mfrb::partial_activate(seeds.rumor_users, fm.num_features, 0.8, act);
  const auto probs = mfrb::edge_prob_table(g, fm);

  std::printf("graph n=%u m=%u, r=%u, |S_r|=%u, omp max threads=%d\n", g.num_nodes,
              g.num_edges, fm.num_features, rumor, omp_get_max_threads());

  {
    mfrb::SamplePool serial(g.num_nodes, fm.num_features);
    auto t0 = std::chrono::steady_clock::now();
    mfrb::append_samples_serial(serial, g, fm, probs, seeds, seed, mfrb::salt::kFinalPool, 0,
                                samples);
    const double serial_ms = ms_since(t0);

    mfrb::SamplePool parallel(g.num_nodes, fm.num_features);
    t0 = std::chrono::steady_clock::now();
    mfrb::append_samples(parallel, g, fm, probs, seeds, seed, mfrb::salt::kFinalPool, 0,
                         samples);
    const double parallel_ms = ms_since(t0);

    std::printf("pool generation  %10llu samples  serial %9.2f ms  openmp %9.2f ms  x%.2f  %s\n",
                static_cast<unsigned long long>(samples), serial_ms, parallel_ms,
                serial_ms / parallel_ms, pools_equal(serial, parallel) ? "match" : "MISMATCH");
  }

  {
    auto t0 = std::chrono::steady_clock::now();
    const auto serial = mfrb::evaluate_f_mc_serial(g, fm, seeds, mc_num, seed);
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = mfrb::evaluate_f_mc(g, fm, seeds, mc_num, seed);
    const double parallel_ms = ms_since(t0);

    std::printf("mc evaluation    %10u runs     serial %9.2f ms  openmp %9.2f ms  x%.2f  %s\n",
                mc_num, serial_ms, parallel_ms, serial_ms / parallel_ms,
                serial.value == parallel.value && serial.std_error == parallel.std_error
                    ? "match"
                    : "MISMATCH");
  }
  return 0;
}
