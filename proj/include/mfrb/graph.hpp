#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfrb {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Immutable directed graph over dense node ids 0..n-1. Edges are stored once,
// sorted by (source, target); an edge's id is its rank in that order, so the
// out-adjacency is just the edge arrays plus an offset table. The in-adjacency
// is a second CSR indexing the same edge ids. Input files may use sparse ids;
// ingestion remaps them (order-preserving) and keeps the original ids around
// for reporting.
struct Graph {
  NodeId num_nodes = 0;
  EdgeId num_edges = 0;

  std::vector<EdgeId> out_offsets;  // n+1; edge ids [out_offsets[u], out_offsets[u+1]) leave u
  std::vector<NodeId> edge_source;  // m
  std::vector<NodeId> edge_target;  // m
  std::vector<EdgeId> in_offsets;   // n+1
  std::vector<NodeId> in_source;    // m, sources sorted per node
  std::vector<EdgeId> in_edge;      // m, edge id of each in_source entry

  std::vector<std::int64_t> original_id;  // n, dense id -> id in the input file

  std::uint32_t out_degree(NodeId u) const { return out_offsets[u + 1] - out_offsets[u]; }
  std::uint32_t in_degree(NodeId v) const { return in_offsets[v + 1] - in_offsets[v]; }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {edge_target.data() + out_offsets[u], edge_target.data() + out_offsets[u + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_source.data() + in_offsets[v], in_source.data() + in_offsets[v + 1]};
  }
  std::span<const EdgeId> in_edge_ids(NodeId v) const {
    return {in_edge.data() + in_offsets[v], in_edge.data() + in_offsets[v + 1]};
  }

  void check_consistent() const;  // throws std::logic_error on broken invariants
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::uint64_t line, const std::string& what);
  std::uint64_t line_number;
};

struct ParseOptions {
  bool symmetrize = false;  // add the reverse of every input edge before dedup
};

struct ParseResult {
  Graph graph;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_dropped = 0;
};

// Exact construction from a densely numbered edge list; throws on
// self-loops, duplicates or out-of-range endpoints. Original ids are the
// identity.
Graph graph_from_edges(NodeId num_nodes, std::vector<std::pair<NodeId, NodeId>> edges);

// Edge-list ingestion: "u v" per line, '#'/'%' comments, blank lines allowed.
// Self-loops and duplicate edges are dropped and counted.
ParseResult parse_edge_list(std::istream& in, const ParseOptions& opts = {});
ParseResult parse_edge_list(const std::string& text, const ParseOptions& opts = {});
ParseResult parse_edge_list_file(const std::string& path, const ParseOptions& opts = {});

// Canonical serialization: "u v\n" in original ids, sorted by (u, v).
// Re-parsing the output reproduces the graph exactly.
std::string serialize_edge_list(const Graph& g);

// Dense id for an id from the input file; returns num_nodes when absent.
NodeId find_dense_id(const Graph& g, std::int64_t original);

}  // namespace mfrb
