#include "mfrb/sampler.hpp"

#include <omp.h>

#include <istream>
#include <ostream>
#include <stdexcept>

namespace mfrb {

void SamplePool::append(MultiSample sample) {
  const auto pos = static_cast<std::uint32_t>(samples_.size());
  ++layer_counts_[sample.layer];
  if (sample.is_full) {
    full_weight_ += sample.weight;
  } else {
    for (const NodeId u : sample.users) index_[u].push_back(pos);
  }
  samples_.push_back(std::move(sample));
}

MultiSample single_sampling(const Graph& g, const FeatureModel& fm,
                            std::span<const double> layer_probs, LayerId layer,
                            std::span<const NodeId> rumor_layer, RngStream& rng,
                            SamplerWorkspace& ws) {
  if (g.num_nodes == 0) throw std::invalid_argument("single_sampling: empty graph");
  const auto root = static_cast<NodeId>(rng.next_below(g.num_nodes));
  // the epoch bump inside r_sampling also starts a fresh lazy realization
  LazyRealization live(layer_probs, rng, ws);
  return r_sampling(g, layer, fm.weights[layer], root, rumor_layer, live, ws);
}

MultiSample multi_sampling(const Graph& g, const FeatureModel& fm,
                           const std::vector<std::vector<double>>& probs,
                           const CascadeSeeds& seeds, RngStream& rng, SamplerWorkspace& ws) {
  if (fm.num_features < 1) throw std::invalid_argument("multi_sampling: no features");
  if (g.num_nodes == 0) throw std::invalid_argument("multi_sampling: empty graph");
  const std::uint64_t feature_node =
      rng.next_below(static_cast<std::uint64_t>(g.num_nodes) * fm.num_features);
  const auto layer = static_cast<LayerId>(feature_node / g.num_nodes);
  const auto root = static_cast<NodeId>(feature_node % g.num_nodes);
  LazyRealization live(probs[layer], rng, ws);
  return r_sampling(g, layer, fm.weights[layer], root, seeds.rumor_layers[layer], live, ws);
}

bool covers(const MultiSample& sample, std::span<const NodeId> positive_sorted) {
  if (positive_sorted.empty()) return false;
  if (sample.is_full) return true;
  auto it = sample.users.begin();
  auto jt = positive_sorted.begin();
  while (it != sample.users.end() && jt != positive_sorted.end()) {
    if (*it < *jt)
      ++it;
    else if (*jt < *it)
      ++jt;
    else
      return true;
  }
  return false;
}

double estimate_W(const SamplePool& pool, std::span<const NodeId> positive_sorted) {
  if (pool.size() == 0) throw std::invalid_argument("estimate_W: empty pool");
  double covered = 0.0;
  for (const MultiSample& s : pool.samples())
    if (covers(s, positive_sorted)) covered += s.weight;
  return covered / static_cast<double>(pool.size());
}

namespace {

void generate_block(std::vector<MultiSample>& out, const Graph& g, const FeatureModel& fm,
                    const std::vector<std::vector<double>>& probs, const CascadeSeeds& seeds,
                    std::uint64_t seed, std::uint64_t stream_salt, std::uint64_t start_index,
                    bool parallel) {
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel if (parallel)
  {
    SamplerWorkspace ws(g.num_nodes, g.num_edges);
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < count; ++t) {
      RngStream rng(seed, stream_salt, start_index + static_cast<std::uint64_t>(t));
      out[t] = multi_sampling(g, fm, probs, seeds, rng, ws);
    }
  }
}

}  // namespace

void append_samples(SamplePool& pool, const Graph& g, const FeatureModel& fm,
                    const std::vector<std::vector<double>>& probs, const CascadeSeeds& seeds,
                    std::uint64_t seed, std::uint64_t stream_salt, std::uint64_t start_index,
                    std::uint64_t count) {
  std::vector<MultiSample> block(count);
  generate_block(block, g, fm, probs, seeds, seed, stream_salt, start_index, true);
  for (auto& s : block) pool.append(std::move(s));
}

void append_samples_serial(SamplePool& pool, const Graph& g, const FeatureModel& fm,
                           const std::vector<std::vector<double>>& probs,
                           const CascadeSeeds& seeds, std::uint64_t seed,
                           std::uint64_t stream_salt, std::uint64_t start_index,
                           std::uint64_t count) {
  std::vector<MultiSample> block(count);
  generate_block(block, g, fm, probs, seeds, seed, stream_salt, start_index, false);
  for (auto& s : block) pool.append(std::move(s));
}

namespace {

template <class T>
void write_raw(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

template <class T>
T read_raw(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(value));
  if (!in) throw std::runtime_error("pool dump: truncated input");
  return value;
}

}  // namespace

void dump_pool(const SamplePool& pool, std::ostream& out) {
  write_raw<std::uint64_t>(out, pool.size());
  for (const MultiSample& s : pool.samples()) {
    write_raw<std::uint16_t>(out, static_cast<std::uint16_t>(s.layer));
    write_raw<std::uint8_t>(out, s.is_full ? 1 : 0);
    write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(s.users.size()));
    for (const NodeId u : s.users) write_raw<std::uint32_t>(out, u);
  }
}

SamplePool load_pool(std::istream& in, const FeatureModel& fm, NodeId num_nodes) {
  SamplePool pool(num_nodes, fm.num_features);
  const auto count = read_raw<std::uint64_t>(in);
  for (std::uint64_t j = 0; j < count; ++j) {
    MultiSample s;
    s.layer = read_raw<std::uint16_t>(in);
    if (s.layer >= fm.num_features) throw std::runtime_error("pool dump: bad layer");
    s.weight = fm.weights[s.layer];
    s.is_full = read_raw<std::uint8_t>(in) != 0;
    const auto users = read_raw<std::uint32_t>(in);
    s.users.reserve(users);
    for (std::uint32_t t = 0; t < users; ++t) s.users.push_back(read_raw<std::uint32_t>(in));
    pool.append(std::move(s));
  }
  return pool;
}

}  // namespace mfrb
