#include "mfrb/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <utility>

namespace mfrb {

ParseError::ParseError(std::uint64_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_number(line) {}

namespace {

bool parse_int(std::string_view tok, std::int64_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

Graph build_graph(std::vector<std::pair<NodeId, NodeId>>&& edges,
                  std::vector<std::int64_t>&& original_id) {
  Graph g;
  g.num_nodes = static_cast<NodeId>(original_id.size());
  g.num_edges = static_cast<EdgeId>(edges.size());
  g.original_id = std::move(original_id);

  g.edge_source.reserve(g.num_edges);
  g.edge_target.reserve(g.num_edges);
  g.out_offsets.assign(g.num_nodes + 1, 0);
  for (auto [u, v] : edges) {
    g.edge_source.push_back(u);
    g.edge_target.push_back(v);
    ++g.out_offsets[u + 1];
  }
  std::partial_sum(g.out_offsets.begin(), g.out_offsets.end(), g.out_offsets.begin());

  g.in_offsets.assign(g.num_nodes + 1, 0);
  for (auto [u, v] : edges) ++g.in_offsets[v + 1];
  std::partial_sum(g.in_offsets.begin(), g.in_offsets.end(), g.in_offsets.begin());

  g.in_source.resize(g.num_edges);
  g.in_edge.resize(g.num_edges);
  std::vector<EdgeId> cursor(g.in_offsets.begin(), g.in_offsets.end() - 1);
  // edges are (source,target)-sorted, so per-node in-lists come out sorted by source
  for (EdgeId e = 0; e < g.num_edges; ++e) {
    const NodeId v = g.edge_target[e];
    g.in_source[cursor[v]] = g.edge_source[e];
    g.in_edge[cursor[v]] = e;
    ++cursor[v];
  }
  return g;
}

}  // namespace

Graph graph_from_edges(NodeId num_nodes, std::vector<std::pair<NodeId, NodeId>> edges) {
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u >= num_nodes || v >= num_nodes)
      throw std::invalid_argument("graph_from_edges: endpoint out of range");
    if (u == v) throw std::invalid_argument("graph_from_edges: self-loop");
    if (i > 0 && edges[i] == edges[i - 1])
      throw std::invalid_argument("graph_from_edges: duplicate edge");
  }
  std::vector<std::int64_t> ids(num_nodes);
  for (NodeId u = 0; u < num_nodes; ++u) ids[u] = u;
  return build_graph(std::move(edges), std::move(ids));
}

ParseResult parse_edge_list(std::istream& in, const ParseOptions& opts) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;

    std::istringstream ls(line);
    std::string tok_u, tok_v, extra;
    if (!(ls >> tok_u >> tok_v)) throw ParseError(line_no, "expected two integer tokens");
    if (ls >> extra) throw ParseError(line_no, "trailing token '" + extra + "'");
    std::int64_t u = 0, v = 0;
    if (!parse_int(tok_u, u)) throw ParseError(line_no, "bad integer '" + tok_u + "'");
    if (!parse_int(tok_v, v)) throw ParseError(line_no, "bad integer '" + tok_v + "'");
    raw.emplace_back(u, v);
    if (opts.symmetrize && u != v) raw.emplace_back(v, u);
  }

  // dense remap, order-preserving over the original ids
  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&ids](std::int64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  ParseResult res;
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) {
    if (u == v) {
      ++res.self_loops_dropped;
      continue;
    }
    edges.emplace_back(dense(u), dense(v));
  }
  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  res.duplicates_dropped = static_cast<std::uint64_t>(edges.end() - last);
  edges.erase(last, edges.end());

  res.graph = build_graph(std::move(edges), std::move(ids));
  return res;
}

ParseResult parse_edge_list(const std::string& text, const ParseOptions& opts) {
  std::istringstream in(text);
  return parse_edge_list(in, opts);
}

ParseResult parse_edge_list_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return parse_edge_list(in, opts);
}

std::string serialize_edge_list(const Graph& g) {
  std::string out;
  for (EdgeId e = 0; e < g.num_edges; ++e) {
    out += std::to_string(g.original_id[g.edge_source[e]]);
    out += ' ';
    out += std::to_string(g.original_id[g.edge_target[e]]);
    out += '\n';
  }
  return out;
}

NodeId find_dense_id(const Graph& g, std::int64_t original) {
  // the remap is order-preserving, so original_id is sorted
  const auto it = std::lower_bound(g.original_id.begin(), g.original_id.end(), original);
  if (it == g.original_id.end() || *it != original) return g.num_nodes;
  return static_cast<NodeId>(it - g.original_id.begin());
}

void Graph::check_consistent() const {
  auto fail = [](const std::string& msg) { throw std::logic_error("graph invariant: " + msg); };
  if (out_offsets.size() != num_nodes + 1u || in_offsets.size() != num_nodes + 1u)
    fail("offset table size");
  if (out_offsets[num_nodes] != num_edges || in_offsets[num_nodes] != num_edges)
    fail("degree sums do not equal m");
  for (EdgeId e = 0; e < num_edges; ++e) {
    if (edge_source[e] >= num_nodes || edge_target[e] >= num_nodes) fail("edge endpoint >= n");
  }
  for (NodeId u = 0; u < num_nodes; ++u) {
    for (EdgeId e = out_offsets[u]; e < out_offsets[u + 1]; ++e)
      if (edge_source[e] != u) fail("out CSR misaligned");
    for (EdgeId idx = in_offsets[u]; idx < in_offsets[u + 1]; ++idx) {
      const EdgeId e = in_edge[idx];
      if (edge_target[e] != u || edge_source[e] != in_source[idx]) fail("in CSR misaligned");
    }
  }
}

}  // namespace mfrb
