#include "agentnet/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace agentnet {

namespace {

std::string at_line(int line) { return line > 0 ? "line " + std::to_string(line) + ": " : ""; }

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = eng_();
  while (x >= limit);
  return x % bound;
}

PortGraph::PortGraph(int n, std::vector<Edge> edges, const std::vector<int>& line_of_edge)
    : n_(n), edges_(std::move(edges)) {
  auto line = [&](std::size_t i) { return i < line_of_edge.size() ? line_of_edge[i] : 0; };
  if (n_ < 1) throw GraphError("graph needs at least one node", line_of_edge.empty() ? 0 : 1);
  std::vector<std::map<Port, std::size_t>> used(static_cast<std::size_t>(n_));
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    int ln = line(i);
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw GraphError(at_line(ln) + "node out of range", ln);
    if (e.u == e.v) throw GraphError(at_line(ln) + "self-loop at node " + std::to_string(e.u), ln);
    if (e.pu < 1 || e.pv < 1) throw GraphError(at_line(ln) + "ports are 1-based", ln);
    if (!pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second)
      throw GraphError(at_line(ln) + "parallel edge", ln);
    if (!(e.w > Rational(0))) throw GraphError(at_line(ln) + "weight must be positive", ln);
    for (auto [node, port] : {std::pair{e.u, e.pu}, std::pair{e.v, e.pv}}) {
      if (!used[static_cast<std::size_t>(node)].emplace(port, i).second)
        throw GraphError(at_line(ln) + "port conflict: port " + std::to_string(port) + " used twice at node " +
                             std::to_string(node),
                         ln);
    }
  }
  adj_.assign(static_cast<std::size_t>(n_), {});
  for (NodeId v = 0; v < n_; ++v) {
    const auto& ports = used[static_cast<std::size_t>(v)];
    Port expect = 1;
    for (const auto& [p, idx] : ports) {
      if (p != expect) {
        int ln = line(idx);
        throw GraphError(at_line(ln) + "port conflict: node " + std::to_string(v) + " has port " + std::to_string(p) +
                             " but no port " + std::to_string(expect),
                         ln);
      }
      ++expect;
    }
    adj_[static_cast<std::size_t>(v)].resize(ports.size());
    max_degree_ = std::max(max_degree_, static_cast<int>(ports.size()));
  }
  for (const Edge& e : edges_) {
    adj_[e.u][e.pu - 1] = PortSlot{e.v, e.pv, e.w};
    adj_[e.v][e.pv - 1] = PortSlot{e.u, e.pu, e.w};
  }
  // connectivity
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (const auto& s : adj_[v])
      if (!seen[s.neighbor]) {
        seen[s.neighbor] = 1;
        ++reached;
        stack.push_back(s.neighbor);
      }
  }
  if (reached != n_) {
    int ln = edges_.empty() ? (line_of_edge.empty() ? 0 : 1) : line(edges_.size() - 1);
    throw GraphError(at_line(ln) + "disconnected graph", ln);
  }
  std::vector<std::size_t> order(edges_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return edges_[a].w < edges_[b].w; });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (edges_[order[k]].w == edges_[order[k - 1]].w) {
      int ln = line(std::max(order[k], order[k - 1]));
      throw GraphError(at_line(ln) + "duplicate weight " + edges_[order[k]].w.to_decimal(), ln);
    }
}

bool PortGraph::operator==(const PortGraph& o) const {
  if (n_ != o.n_ || edges_.size() != o.edges_.size()) return false;
  for (NodeId v = 0; v < n_; ++v) {
    if (adj_[v].size() != o.adj_[v].size()) return false;
    for (std::size_t p = 0; p < adj_[v].size(); ++p) {
      const auto& a = adj_[v][p];
      const auto& b = o.adj_[v][p];
      if (a.neighbor != b.neighbor || a.reverse != b.reverse || !(a.weight == b.weight)) return false;
    }
  }
  return true;
}

PortGraph parse_graph(std::istream& in, const ParseOptions& opt) {
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  int n = 0;
  long m = 0;
  int header_line = 0;
  std::vector<Edge> edges;
  std::vector<int> lines;
  while (std::getline(in, raw)) {
    ++line_no;
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    std::istringstream ls(raw);
    if (!have_header) {
      if (!(ls >> n >> m) || n < 1 || m < 0) throw GraphError(at_line(line_no) + "malformed header", line_no);
      std::string extra;
      if (ls >> extra) throw GraphError(at_line(line_no) + "malformed header", line_no);
      have_header = true;
      header_line = line_no;
      continue;
    }
    Edge e;
    std::string wtext, extra;
    if (!(ls >> e.u >> e.v >> e.pu >> e.pv >> wtext) || (ls >> extra))
      throw GraphError(at_line(line_no) + "malformed edge line", line_no);
    try {
      e.w = Rational::parse_decimal(wtext);
    } catch (const std::exception&) {
      throw GraphError(at_line(line_no) + "malformed weight '" + wtext + "'", line_no);
    }
    if (static_cast<long>(edges.size()) == m)
      throw GraphError(at_line(line_no) + "edge count mismatch: header declares " + std::to_string(m) + " edges",
                       line_no);
    edges.push_back(e);
    lines.push_back(line_no);
  }
  if (!have_header) throw GraphError("malformed header: empty input", 0);
  if (static_cast<long>(edges.size()) != m)
    throw GraphError(at_line(header_line) + "edge count mismatch: header declares " + std::to_string(m) +
                         " edges, found " + std::to_string(edges.size()),
                     header_line);
  if (opt.perturb_weights) {
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a].w < edges[b].w; });
    std::vector<Rational> bumped(edges.size());
    std::int64_t rank = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      rank = (k > 0 && edges[order[k]].w == edges[order[k - 1]].w) ? rank + 1 : 0;
      bumped[order[k]] = edges[order[k]].w + Rational(rank, 1'000'000);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i].w = bumped[i];
  }
  return PortGraph(n, std::move(edges), lines);
}

PortGraph parse_graph_text(const std::string& text, const ParseOptions& opt) {
  std::istringstream in(text);
  return parse_graph(in, opt);
}

std::string serialize_graph(const PortGraph& g) {
  std::ostringstream out;
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << e.pu << ' ' << e.pv << ' ' << e.w.to_decimal() << '\n';
  return out.str();
}

GraphKind parse_graph_kind(const std::string& name) {
  static const std::map<std::string, GraphKind> kinds{{"path", GraphKind::path},
                                                     {"ring", GraphKind::ring},
                                                     {"star", GraphKind::star},
                                                     {"complete", GraphKind::complete},
                                                     {"random_tree", GraphKind::random_tree},
                                                     {"random_connected", GraphKind::random_connected}};
  auto it = kinds.find(name);
  if (it == kinds.end()) throw std::invalid_argument("unknown graph kind '" + name + "'");
  return it->second;
}

std::string to_string(GraphKind k) {
  switch (k) {
    case GraphKind::path: return "path";
    case GraphKind::ring: return "ring";
    case GraphKind::star: return "star";
    case GraphKind::complete: return "complete";
    case GraphKind::random_tree: return "random_tree";
    case GraphKind::random_connected: return "random_connected";
  }
  return "?";
}

PortGraph generate_graph(GraphKind kind, int n, int extra_edges, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (extra_edges < 0) throw std::invalid_argument("extra_edges must be nonnegative");
  if (extra_edges > 0 && kind != GraphKind::random_connected)
    throw std::invalid_argument("extra_edges only applies to random_connected");
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  switch (kind) {
    case GraphKind::path:
      for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
      break;
    case GraphKind::ring:
      if (n < 3) throw std::invalid_argument("ring needs n >= 3");
      for (int i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
      break;
    case GraphKind::star:
      for (int i = 1; i < n; ++i) pairs.emplace_back(0, i);
      break;
    case GraphKind::complete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
      break;
    case GraphKind::random_tree:
    case GraphKind::random_connected: {
      std::vector<NodeId> label(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) label[i] = i;
      rng.shuffle(label);
      for (int i = 1; i < n; ++i) {
        NodeId parent = label[rng.below(static_cast<std::uint64_t>(i))];
        pairs.emplace_back(parent, label[i]);
      }
      if (kind == GraphKind::random_connected) {
        long long room = static_cast<long long>(n) * (n - 1) / 2 - (n - 1);
        if (extra_edges > room) throw std::invalid_argument("too many extra edges for n");
        std::set<std::pair<NodeId, NodeId>> have;
        for (auto [a, b] : pairs) have.insert({std::min(a, b), std::max(a, b)});
        std::vector<std::pair<NodeId, NodeId>> missing;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            if (!have.count({i, j})) missing.emplace_back(i, j);
        rng.shuffle(missing);
        for (int k = 0; k < extra_edges; ++k) pairs.push_back(missing[k]);
      }
      break;
    }
  }
  std::size_t m = pairs.size();
  // distinct weights: m distinct integers from [1, 10m], stored with one decimal place
  std::vector<std::int64_t> pool(10 * m);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<std::int64_t>(i) + 1;
  rng.shuffle(pool);
  std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m; ++i) {
    incident[pairs[i].first].push_back(i);
    incident[pairs[i].second].push_back(i);
  }
  std::vector<Edge> edges(m);
  for (std::size_t i = 0; i < m; ++i) {
    edges[i].u = pairs[i].first;
    edges[i].v = pairs[i].second;
    edges[i].w = Rational(pool[i], 10);
  }
  for (NodeId v = 0; v < n; ++v) {
    std::vector<Port> ports(incident[v].size());
    for (std::size_t k = 0; k < ports.size(); ++k) ports[k] = static_cast<Port>(k) + 1;
    rng.shuffle(ports);
    for (std::size_t k = 0; k < ports.size(); ++k) {
      Edge& e = edges[incident[v][k]];
      (e.u == v ? e.pu : e.pv) = ports[k];
    }
  }
  return PortGraph(n, std::move(edges));
}

std::vector<int> bfs_distances(const PortGraph& g, NodeId src) {
  std::vector<int> dist(static_cast<std::size_t>(g.node_count()), -1);
  std::deque<NodeId> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    for (const auto& s : g.slots(v))
      if (dist[s.neighbor] < 0) {
        dist[s.neighbor] = dist[v] + 1;
        q.push_back(s.neighbor);
      }
  }
  return dist;
}

GraphStats graph_stats(const PortGraph& g) {
  GraphStats st{g.node_count(), g.edge_count(), g.max_degree(), 0};
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (int d : bfs_distances(g, v)) st.diameter = std::max(st.diameter, d);
  return st;
}

}  // namespace agentnet
