#include "agentnet/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace agentnet {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

Edge normalized(Edge e) {
  if (e.u > e.v) e = {e.v, e.u, e.pv, e.pu, e.w};
  return e;
}

MstResult finish(std::vector<Edge> edges) {
  MstResult r;
  for (auto& e : edges) e = normalized(e);
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
  for (const auto& e : edges) r.total = r.total + e.w;
  r.edges = std::move(edges);
  return r;
}

ValidationReport fail(const std::string& check, const std::string& witness) { return {check, false, witness}; }

std::string join(const std::vector<int>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

std::vector<bool> membership(const PortGraph& g, const std::vector<NodeId>& set) {
  std::vector<bool> in(static_cast<std::size_t>(g.node_count()), false);
  for (NodeId v : set) {
    if (v < 0 || v >= g.node_count()) throw std::invalid_argument("node " + std::to_string(v) + " out of range");
    in[v] = true;
  }
  return in;
}

bool dominates(const PortGraph& g, const std::vector<bool>& in) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    bool ok = in[v];
    for (const auto& s : g.slots(v)) ok = ok || in[s.neighbor];
    if (!ok) return false;
  }
  return true;
}

}  // namespace

MstResult kruskal_mst(const PortGraph& g) {
  std::vector<Edge> sorted = g.edges();
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) { return a.w < b.w; });
  UnionFind uf(g.node_count());
  std::vector<Edge> tree;
  for (const auto& e : sorted)
    if (uf.unite(e.u, e.v)) tree.push_back(e);
  if (g.node_count() > 0 && static_cast<int>(tree.size()) != g.node_count() - 1)
    throw std::invalid_argument("graph is disconnected");
  return finish(std::move(tree));
}

MstResult exhaustive_mst(const PortGraph& g) {
  const int n = g.node_count(), m = g.edge_count();
  if (n <= 1) return {};
  std::optional<MstResult> best;
  std::vector<int> pick;
  // Choose n-1 edges in every way; keep acyclic choices.
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == n - 1) {
      UnionFind uf(n);
      std::vector<Edge> t;
      for (int i : pick) {
        const Edge& e = g.edges()[i];
        if (!uf.unite(e.u, e.v)) return;
        t.push_back(e);
      }
      MstResult r = finish(std::move(t));
      if (!best || r.total < best->total) best = std::move(r);
      return;
    }
    for (int i = from; i <= m - (n - 1 - static_cast<int>(pick.size())); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  if (!best) throw std::invalid_argument("graph is disconnected");
  return *best;
}

std::optional<Edge> cut_minimum(const PortGraph& g, const std::vector<bool>& side) {
  std::optional<Edge> best;
  for (const auto& e : g.edges())
    if (side[e.u] != side[e.v] && (!best || e.w < best->w)) best = e;
  return best;
}

ValidationReport validate_leader(const World& w) {
  const std::string check = "leader_unique";
  std::vector<int> leaders, undecided;
  for (const auto& a : w.agents()) {
    if (a.status == Status::leader) leaders.push_back(a.id);
    else if (a.status != Status::non_candidate) undecided.push_back(a.id);
  }
  if (leaders.size() != 1) return fail(check, "leaders=[" + join(leaders) + "]");
  if (!undecided.empty()) return fail(check, "not_non_candidate=[" + join(undecided) + "]");
  return {check, true, {}};
}

ValidationReport validate_dispersion(const World& w) {
  const std::string check = "dispersed";
  auto occ = w.occupancy();
  for (NodeId v = 0; v < static_cast<NodeId>(occ.size()); ++v)
    if (occ[v] != 1) return fail(check, "node=" + std::to_string(v) + " occupancy=" + std::to_string(occ[v]));
  return {check, true, {}};
}

ValidationReport validate_gathered(const World& w) {
  const std::string check = "gathered";
  auto occ = w.occupancy();
  for (NodeId v = 0; v < static_cast<NodeId>(occ.size()); ++v)
    if (occ[v] != 0 && occ[v] != w.size())
      return fail(check, "node=" + std::to_string(v) + " occupancy=" + std::to_string(occ[v]));
  return {check, true, {}};
}

ValidationReport validate_mis(const PortGraph& g, const std::vector<NodeId>& set) {
  const std::string check = "mis";
  auto in = membership(g, set);
  for (const auto& e : g.edges())
    if (in[e.u] && in[e.v]) return fail(check, "adjacent members " + std::to_string(e.u) + "," + std::to_string(e.v));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (in[v]) continue;
    bool covered = false;
    for (const auto& s : g.slots(v)) covered = covered || in[s.neighbor];
    if (!covered) return fail(check, "node " + std::to_string(v) + " could join");
  }
  return {check, true, {}};
}

ValidationReport validate_mds(const PortGraph& g, const std::vector<NodeId>& set) {
  const std::string check = "mds";
  auto in = membership(g, set);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    bool ok = in[v];
    for (const auto& s : g.slots(v)) ok = ok || in[s.neighbor];
    if (!ok) return fail(check, "node " + std::to_string(v) + " undominated");
  }
  for (NodeId v : set) {
    in[v] = false;
    bool still = dominates(g, in);
    in[v] = true;
    if (still) return fail(check, "member " + std::to_string(v) + " is redundant");
  }
  return {check, true, {}};
}

ValidationReport validate_tree_pointers(const World& w) {
  const std::string check = "tree_pointers";
  const PortGraph& g = w.graph();
  const int n = g.node_count();
  // Settled agents sit at home; a travelling leader owns the one empty node.
  std::vector<const Agent*> at(static_cast<std::size_t>(n), nullptr);
  std::vector<const Agent*> travellers;
  for (int k = 0; k < w.size(); ++k) {
    const Agent& a = w.agents()[k];
    if (a.status == Status::leader) {
      travellers.push_back(&a);
      continue;
    }
    NodeId v = w.positions()[k];
    if (at[v]) return fail(check, "node " + std::to_string(v) + " holds two agents");
    at[v] = &a;
  }
  for (const Agent* a : travellers) {
    NodeId home = w.position_of(a->id);
    if (at[home]) home = static_cast<NodeId>(std::find(at.begin(), at.end(), nullptr) - at.begin());
    if (home >= n) return fail(check, "no free node for agent " + std::to_string(a->id));
    at[home] = a;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!at[v]) return fail(check, "node " + std::to_string(v) + " is empty");
    const Component& c = at[v]->comp;
    if (c.parent != 0) {
      const PortSlot& s = g.slot(v, c.parent);
      const Component& pc = at[s.neighbor]->comp;
      if (!std::binary_search(pc.children.begin(), pc.children.end(), s.reverse))
        return fail(check, "node " + std::to_string(v) + " missing from its parent's children");
      if (pc.rank != c.rank) return fail(check, "node " + std::to_string(v) + " disagrees on component rank");
    }
    for (Port p : c.children) {
      NodeId u = g.slot(v, p).neighbor;
      if (at[u]->comp.parent != g.slot(v, p).reverse)
        return fail(check, "child " + std::to_string(u) + " of " + std::to_string(v) + " points elsewhere");
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    // Following parent ports must reach a root within n steps.
    NodeId x = v;
    int steps = 0;
    while (at[x]->comp.parent != 0) {
      x = g.slot(x, at[x]->comp.parent).neighbor;
      if (++steps > n) return fail(check, "cycle through node " + std::to_string(v));
    }
    if (at[x]->comp.rank != at[x]->tree.rank)
      return fail(check, "root " + std::to_string(x) + " does not define its component rank");
  }
  return {check, true, {}};
}

namespace {

// Closed neighborhoods as bitmasks; brute force is capped at 20 nodes.
std::vector<std::uint32_t> closed_masks(const PortGraph& g) {
  const int n = g.node_count();
  if (n > 20) throw std::invalid_argument("brute force limited to 20 nodes");
  std::vector<std::uint32_t> m(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    m[v] = 1u << v;
    for (const auto& s : g.slots(v)) m[v] |= 1u << s.neighbor;
  }
  return m;
}

std::uint32_t mask_of(const PortGraph& g, const std::vector<NodeId>& set) {
  std::uint32_t mask = 0;
  for (NodeId v : set) {
    if (v < 0 || v >= g.node_count()) throw std::invalid_argument("node " + std::to_string(v) + " out of range");
    mask |= 1u << v;
  }
  return mask;
}

bool mask_dominates(const std::vector<std::uint32_t>& closed, std::uint32_t mask) {
  for (std::uint32_t c : closed)
    if (!(c & mask)) return false;
  return true;
}

}  // namespace

bool brute_is_mis(const PortGraph& g, const std::vector<NodeId>& set) {
  closed_masks(g);
  auto sets = all_maximal_independent_sets(g);
  std::vector<NodeId> s = set;
  std::sort(s.begin(), s.end());
  return std::find(sets.begin(), sets.end(), s) != sets.end();
}

bool brute_is_mds(const PortGraph& g, const std::vector<NodeId>& set) {
  const auto closed = closed_masks(g);
  const std::uint32_t full = mask_of(g, set);
  if (!mask_dominates(closed, full)) return false;
  // No proper subset of the set dominates.
  for (std::uint32_t sub = (full - 1) & full; sub != full; sub = (sub - 1) & full) {
    if (mask_dominates(closed, sub)) return false;
    if (sub == 0) break;
  }
  return true;
}

std::vector<std::vector<NodeId>> all_maximal_independent_sets(const PortGraph& g) {
  const auto closed = closed_masks(g);
  const int n = g.node_count();
  std::vector<std::vector<NodeId>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      const std::uint32_t others = closed[v] & ~(1u << v);
      // A member has no member neighbor; a non-member has one.
      ok = mask >> v & 1 ? !(others & mask) : (others & mask) != 0;
    }
    if (!ok) continue;
    std::vector<NodeId> s;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) s.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<int>> all_pairs_distances(const PortGraph& g) {
  const int n = g.node_count();
  const int inf = n + 1;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

std::vector<std::vector<MpState>> direct_mp_run(const PortGraph& g, const std::vector<AgentId>& node_ids,
                                                const MpAlgorithm& alg) {
  const int n = g.node_count();
  if (static_cast<int>(node_ids.size()) != n) throw std::invalid_argument("one id per node required");
  std::vector<MpState> state(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) state[v] = alg.init(node_ids[v], g.degree(v));
  std::vector<std::vector<MpState>> out{state};
  for (long t = 0; t < alg.rounds; ++t) {
    std::vector<Messages> inbox(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) inbox[v].assign(static_cast<std::size_t>(g.degree(v)), std::nullopt);
    for (NodeId v = 0; v < n; ++v) {
      Messages sent = alg.send(state[v], g.degree(v));
      for (Port p = 1; p <= g.degree(v); ++p) {
        const PortSlot& s = g.slot(v, p);
        inbox[s.neighbor][s.reverse - 1] = sent[p - 1];
      }
    }
    for (NodeId v = 0; v < n; ++v) state[v] = alg.receive(state[v], inbox[v]);
    out.push_back(state);
  }
  return out;
}

}  // namespace agentnet
