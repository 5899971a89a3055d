#include "agentnet/mst.hpp"

#include <algorithm>
#include <set>

#include "agentnet/election.hpp"

namespace agentnet {

namespace {

void insert_port(std::vector<Port>& v, Port p) { v.insert(std::upper_bound(v.begin(), v.end(), p), p); }
void erase_port(std::vector<Port>& v, Port p) { std::erase(v, p); }

bool tree_port(const Component& c, Port p) {
  return p == c.parent || std::binary_search(c.children.begin(), c.children.end(), p);
}

}  // namespace

void MstProgram::lead(StepContext& ctx) {
  const Agent& me = ctx.self();
  Agent& nx = ctx.mut();
  Courier& c = nx.courier;
  switch (c.task) {
    case Task::rank_walk:
      if (rank_step(ctx, false)) {
        c.task = Task::hold;
        c.phase = 1;
        c.token = 1;
        ctx.emit("phase", "phase=1");
      }
      return;
    case Task::route:
    case Task::hold: {
      const Agent& host = settled_host(ctx);
      if (c.task == Task::route && !route_step(ctx, host.tree, c.target)) return;
      c.task = Task::hold;
      if (host.comp.rank != host.tree.rank) return pass_token(ctx);
      // The token holder represents its component: find the minimum outgoing edge.
      c.task = Task::scan;
      c.anchor = host.tree.rank;
      c.comp = host.comp.rank;
      c.found = false;
      c.fresh = true;
      c.cursor = 0;
      return walk_component(ctx, host);
    }
    case Task::scan:
    case Task::seek: return walk_component(ctx, settled_host(ctx));
    case Task::reverse: return step_reverse(ctx, settled_host(ctx));
    case Task::rewind: {
      const Agent& host = settled_host(ctx);
      if (host.tree.rank != c.anchor) return ctx.move(host.comp.parent);
      c.task = Task::relabel;
      c.fresh = true;
      c.cursor = 0;
      return step_relabel(ctx, host);
    }
    case Task::relabel: return step_relabel(ctx, settled_host(ctx));
    case Task::attach: {
      const Agent& host = settled_host(ctx);
      Port back = me.arrival_port;
      edit(ctx, host, [back](Agent& a) { insert_port(a.comp.children, back); });
      return pass_token(ctx);
    }
    default: throw SimulationFault("mst: unexpected courier task");
  }
}

void MstProgram::pass_token(StepContext& ctx) {
  Courier& c = ctx.mut().courier;
  if (c.token == ctx.agent_count()) {
    c.token = 1;
    ++c.phase;
    ctx.emit("phase", "phase=" + std::to_string(c.phase));
  } else {
    ++c.token;
  }
  c.target = c.token;
  c.task = Task::route;
  route_step(ctx, settled_host(ctx).tree, c.target);
}

// Depth-first walk of the token holder's component tree. While scanning, each
// member probes its cheapest unclassified ports until one leaves the component;
// ports found to stay inside are marked at both ends and never probed again.
void MstProgram::walk_component(StepContext& ctx, const Agent& host) {
  const Agent& me = ctx.self();
  Agent& nx = ctx.mut();
  Courier& c = nx.courier;
  const bool scan = c.task == Task::scan;

  if (c.probing) {
    c.probing = false;
    const int other = host.comp.rank;
    if (other == c.comp) {
      Port back = me.arrival_port;
      edit(ctx, host, [back](Agent& a) { a.comp.rejected[back - 1] = true; });
      c.reject_pending = true;
    } else {
      const Rational& w = ctx.weight(me.arrival_port);
      if (!c.found || w < c.best) {
        c.found = true;
        c.best = w;
        c.best_member = c.at_rank;
        c.best_port = c.probe_port;
        c.best_other = other;
      }
      c.fresh = false;
      c.cursor = 0;
    }
    ctx.move(me.arrival_port);
    return;
  }

  c.at_rank = host.tree.rank;
  Port stale = 0;  // rejected this round, not yet visible in host
  if (c.reject_pending) {
    c.reject_pending = false;
    stale = c.probe_port;
    edit(ctx, host, [stale](Agent& a) { a.comp.rejected[stale - 1] = true; });
  }
  if (c.ascending) {
    c.ascending = false;
    c.cursor = me.arrival_port;
  }
  if (!scan && host.tree.rank == c.best_member) return begin_merge(ctx, host);
  if (scan && c.fresh) {
    Port pick = 0;
    for (Port p = 1; p <= ctx.degree(); ++p) {
      if (p == stale || host.comp.rejected[p - 1] || tree_port(host.comp, p)) continue;
      if (pick == 0 || ctx.weight(p) < ctx.weight(pick)) pick = p;
    }
    if (pick != 0) {
      c.probe_port = pick;
      c.probing = true;
      ctx.emit("probe", "port=" + std::to_string(pick));
      ctx.move(pick);
      return;
    }
    c.fresh = false;
    c.cursor = 0;
  }
  for (Port ch : host.comp.children)
    if (ch > c.cursor) {
      c.fresh = true;
      c.cursor = 0;
      ctx.move(ch);
      return;
    }
  if (host.tree.rank != c.anchor) {
    c.ascending = true;
    ctx.move(host.comp.parent);
    return;
  }
  if (!scan) throw SimulationFault("mst: merge endpoint not found in its component");
  if (!c.found) {  // the component spans the graph
    c.task = Task::done;
    nx.done = true;
    nx.at_home = true;
    ctx.emit("mst_done", "phases=" + std::to_string(c.phase));
    return;
  }
  c.task = Task::seek;
  c.cursor = 0;
  if (host.tree.rank == c.best_member) begin_merge(ctx, host);
}

// The component with the larger rank is re-rooted at its endpoint of the edge
// and hung below the other endpoint; the merged component keeps the smaller rank.
void MstProgram::begin_merge(StepContext& ctx, const Agent& host) {
  Courier& c = ctx.mut().courier;
  const Port p = c.best_port;
  if (c.comp == c.best_other) throw SimulationFault("mst: merge within one component");
  ctx.emit("merge", "component=" + std::to_string(c.comp) + " other=" + std::to_string(c.best_other));
  c.task = Task::reverse;
  if (c.comp < c.best_other) {
    edit(ctx, host, [p](Agent& a) { insert_port(a.comp.children, p); });
    c.new_rank = c.comp;
    c.new_parent = 0;
    c.anchor = 0;
    c.attach_after = false;
    ctx.move(p);
    return;
  }
  c.new_rank = c.best_other;
  c.new_parent = p;
  c.anchor = host.tree.rank;
  c.attach_after = true;
  step_reverse(ctx, host);
}

// Flip one parent pointer per round on the way up to the old root.
void MstProgram::step_reverse(StepContext& ctx, const Agent& host) {
  const Agent& me = ctx.self();
  Courier& c = ctx.mut().courier;
  if (c.anchor == 0) c.anchor = host.tree.rank;
  const Port up = c.new_parent != 0 ? c.new_parent : me.arrival_port;
  const Port old = host.comp.parent;
  edit(ctx, host, [up, old](Agent& a) {
    a.comp.parent = up;
    erase_port(a.comp.children, up);
    if (old != 0) insert_port(a.comp.children, old);
  });
  c.new_parent = 0;
  if (old == 0) {
    c.task = Task::rewind;
    return;
  }
  ctx.move(old);
}

void MstProgram::step_relabel(StepContext& ctx, const Agent& host) {
  const Agent& me = ctx.self();
  Courier& c = ctx.mut().courier;
  if (c.ascending) {
    c.ascending = false;
    c.cursor = me.arrival_port;
  }
  if (c.fresh) {
    c.fresh = false;
    c.cursor = 0;
    const int r = c.new_rank;
    edit(ctx, host, [r](Agent& a) { a.comp.rank = r; });
  }
  for (Port ch : host.comp.children)
    if (ch > c.cursor) {
      c.fresh = true;
      ctx.move(ch);
      return;
    }
  if (host.tree.rank != c.anchor) {
    c.ascending = true;
    ctx.move(host.comp.parent);
    return;
  }
  if (c.attach_after) {
    c.task = Task::attach;
    ctx.move(host.comp.parent);
    return;
  }
  pass_token(ctx);
}

std::vector<Edge> mst_edges(const World& w) {
  std::vector<Edge> out;
  const PortGraph& g = w.graph();
  for (int k = 0; k < w.size(); ++k) {
    const Agent& a = w.agents()[k];
    if (a.comp.parent == 0) continue;
    NodeId v = w.positions()[k];
    const PortSlot& s = g.slot(v, a.comp.parent);
    Edge e{v, s.neighbor, a.comp.parent, s.reverse, s.weight};
    if (e.u > e.v) e = {e.v, e.u, e.pv, e.pu, e.w};
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
  return out;
}

MstReport run_mst(World& w, long max_rounds, const MstObserver& observe) {
  MstReport rep;
  const bool has_leader = std::count_if(w.agents().begin(), w.agents().end(),
                                        [](const Agent& a) { return a.status == Status::leader; }) == 1;
  long budget = max_rounds;
  if (!has_leader) {
    rep.election = elect_leader(w, max_rounds);
    budget -= rep.election.rounds;
    if (rep.election.termination != Termination::completed || budget <= 0) {
      rep.run = rep.election;
      rep.run.termination = Termination::max_rounds_exceeded;
      return rep;
    }
  }
  MstProgram prog;
  const long start = w.round();
  int phase = 0;
  Task task = Task::none;
  AgentId leader = 0;
  for (const Agent& a : w.agents())
    if (a.status == Status::leader) leader = a.id;
  auto hook = [&](const World& world) {
    const Courier& c = world.agents()[world.index_of(leader)].courier;
    if (c.phase != phase) {
      if (phase == 0) rep.rank_rounds = world.round() - start;
      phase = c.phase;
      std::set<int> ranks;
      for (const Agent& a : world.agents()) ranks.insert(a.comp.rank);
      if (c.task != Task::done) rep.components.push_back(static_cast<int>(ranks.size()));
      if (observe) observe(world, MstEvent::phase_start);
    }
    auto merging = [](Task t) { return t == Task::reverse || t == Task::rewind || t == Task::relabel || t == Task::attach; };
    if (merging(task) && !merging(c.task) && observe) observe(world, MstEvent::merge_done);
    task = c.task;
  };
  rep.run = run(w, prog, budget, hook);
  rep.run.rounds += rep.election.rounds;
  rep.phases = phase;
  rep.edges = mst_edges(w);
  for (const Edge& e : rep.edges) rep.total = rep.total + e.w;
  return rep;
}

}  // namespace agentnet
