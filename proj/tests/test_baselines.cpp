#include <doctest.h>

#include <cmath>

#include "mfrb/baselines.hpp"
#include "mfrb/diffusion.hpp"
#include "mfrb/synth.hpp"
#include "support.hpp"

using namespace mfrb;

TEST_CASE("simulation greedy finds the path blocker") {
  const test::PathInstance inst;
  const auto picked = greedy_mc(inst.graph, inst.fm, inst.seeds, 1, 32, 5);
  CHECK(picked == std::vector<NodeId>{1});
}

TEST_CASE("simulation greedy blocks two disjoint rumor paths") {
  const Graph g = test::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  const auto fm = FeatureModel::constant({1.0}, {1.0});
  const auto seeds = CascadeSeeds::fully_active({0, 3}, 1);
  const auto picked = greedy_mc(g, fm, seeds, 2, 32, 5);

  std::vector<NodeId> best;
  test::exact_opt(g, fm, seeds, 2, &best);
  CHECK(picked == best);
  CHECK(picked == std::vector<NodeId>{1, 4});
}

TEST_CASE("greedy tie on an unreachable instance goes to the lowest id") {
  const Graph g = test::from_edges(4, {{1, 2}});  // rumor node 0 is isolated
  const auto fm = FeatureModel::constant({1.0}, {0.5});
  const auto seeds = CascadeSeeds::fully_active({0}, 1);
  const auto picked = greedy_mc(g, fm, seeds, 1, 16, 9);
  CHECK(picked == std::vector<NodeId>{1});
}

TEST_CASE("proximity prefers high out-degree rumor neighbors") {
  // rumor center 0 points at 1..4; leaf out-degrees 1,2,3,0
  const Graph g = test::from_edges(9, {{0, 1},
                                       {0, 2},
                                       {0, 3},
                                       {0, 4},
                                       {1, 5},
                                       {2, 5},
                                       {2, 6},
                                       {3, 5},
                                       {3, 6},
                                       {3, 7}});
  const auto seeds = CascadeSeeds::fully_active({0}, 1);
  CHECK(proximity(g, seeds, 2) == std::vector<NodeId>{2, 3});
}

TEST_CASE("proximity falls back to global degree when the rumor has no arcs") {
  // rumor node 5 has no outgoing edges; 0 and 1 have the highest degrees
  const Graph g = test::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {2, 3}});
  CascadeSeeds seeds = CascadeSeeds::fully_active({5}, 1);
  CHECK(proximity(g, seeds, 2) == std::vector<NodeId>{0, 1});
}

TEST_CASE("proximity tops up a short candidate list") {
  // rumor 0 has a single neighbor; second pick comes from the fill rule
  const Graph g = test::from_edges(5, {{0, 1}, {2, 3}, {2, 4}, {3, 4}});
  const auto seeds = CascadeSeeds::fully_active({0}, 1);
  const auto picked = proximity(g, seeds, 2);
  CHECK(picked == std::vector<NodeId>{1, 2});  // 1 is the neighbor, 2 the top filler
}

TEST_CASE("random baseline spans the complement") {
  const Graph g = test::path_graph(6);
  const auto seeds = CascadeSeeds::fully_active({0}, 1);
  const auto all = random_baseline(g, seeds, 5, 3);
  CHECK(all == std::vector<NodeId>{1, 2, 3, 4, 5});

  const auto a = random_baseline(g, seeds, 2, 77);
  const auto b = random_baseline(g, seeds, 2, 77);
  CHECK(a == b);
}

TEST_CASE("random baseline inclusion frequencies are uniform") {
  const Graph g = test::path_graph(6);
  const auto seeds = CascadeSeeds::fully_active({0}, 1);
  std::vector<int> hits(6, 0);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    for (const NodeId u : random_baseline(g, seeds, 2, 424200 + i)) ++hits[u];
  CHECK(hits[0] == 0);
  const double p = 2.0 / 5.0;
  const double sigma = std::sqrt(draws * p * (1.0 - p));
  for (NodeId u = 1; u < 6; ++u) CHECK(std::abs(hits[u] - draws * p) <= 3.0 * sigma);
}

TEST_CASE("every baseline returns k users disjoint from the rumor set") {
  RngStream gen(2468, 0, 0);
  for (int rep = 0; rep < 5; ++rep) {
    const auto inst = test::random_guard_instance(gen);
    const auto n_free = test::non_rumor_users(inst.graph, inst.seeds).size();
    const auto k = static_cast<std::uint32_t>(1 + rep % std::min<std::size_t>(n_free, 2));
    for (const auto& picked :
         {greedy_mc(inst.graph, inst.fm, inst.seeds, k, 8, rep),
          proximity(inst.graph, inst.seeds, k),
          random_baseline(inst.graph, inst.seeds, k, rep)}) {
      CHECK(picked.size() == k);
      for (const NodeId u : picked) CHECK_FALSE(contains_sorted(inst.seeds.rumor_users, u));
    }
  }
}
