#pragma once

#include <cstdint>
#include <istream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "agentnet/rational.hpp"

namespace agentnet {

using NodeId = int;  // oracle-side label; agents never see it
using Port = int;    // 1-based; 0 means "no port"

struct PortSlot {
  NodeId neighbor = -1;
  Port reverse = 0;
  Rational weight;
};

struct Edge {
  NodeId u = 0, v = 0;
  Port pu = 0, pv = 0;
  Rational w;
};

class GraphError : public std::runtime_error {
 public:
  GraphError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Immutable after construction. slots(v)[p-1] is port p at v.
class PortGraph {
 public:
  PortGraph() = default;
  // Validates every invariant; `line_of_edge` (optional) maps edge index to source line.
  PortGraph(int n, std::vector<Edge> edges, const std::vector<int>& line_of_edge = {});

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int degree(NodeId v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const { return max_degree_; }
  const std::vector<PortSlot>& slots(NodeId v) const { return adj_[v]; }
  const PortSlot& slot(NodeId v, Port p) const { return adj_[v][p - 1]; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool operator==(const PortGraph& o) const;

 private:
  int n_ = 0;
  int max_degree_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<PortSlot>> adj_;
};

struct GraphStats {
  int n = 0, m = 0, max_degree = 0, diameter = 0;
  bool operator==(const GraphStats&) const = default;
};

struct ParseOptions {
  bool perturb_weights = false;  // break duplicate weights by rank * 1e-6
};

PortGraph parse_graph(std::istream& in, const ParseOptions& opt = {});
PortGraph parse_graph_text(const std::string& text, const ParseOptions& opt = {});
std::string serialize_graph(const PortGraph& g);

enum class GraphKind { path, ring, star, complete, random_tree, random_connected };
GraphKind parse_graph_kind(const std::string& name);
std::string to_string(GraphKind k);

PortGraph generate_graph(GraphKind kind, int n, int extra_edges, std::uint64_t seed);

GraphStats graph_stats(const PortGraph& g);
std::vector<int> bfs_distances(const PortGraph& g, NodeId src);

// std::mt19937_64 output is fully specified; the bounded draw is ours so that
// results do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace agentnet
