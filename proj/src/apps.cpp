#include "agentnet/apps.hpp"

#include <algorithm>

#include "agentnet/election.hpp"

namespace agentnet {

namespace {

// The agent numbered `rank` when it stands here, riding or settled.
const Agent* ranked_here(StepContext& ctx, int rank) {
  for (const Agent* a : ctx.here())
    if (a->tree.rank == rank) return a;
  return nullptr;
}

void finish(StepContext& ctx) {
  Agent& nx = ctx.mut();
  nx.courier.task = Task::done;
  nx.done = true;
  nx.at_home = true;
  ctx.emit("app_done");
}

}  // namespace

void AppProgram::lead(StepContext& ctx) {
  Agent& nx = ctx.mut();
  Courier& c = nx.courier;
  switch (c.task) {
    case Task::rank_walk:
      if (!rank_step(ctx, true)) return;
      ctx.emit("gathered");
      if (kind_ == AppKind::gather) return finish(ctx);
      // The root's subtree bound lands this round; start routing next round.
      c.stage = 0;
      c.task = ctx.agent_count() > 1 ? Task::disperse : Task::greedy;
      c.token = c.target = ctx.agent_count() > 1 ? 2 : 1;
      return;
    case Task::disperse: {
      const Agent* host = ranked_here(ctx, c.at_rank);
      if (!route_step(ctx, host->tree, c.target)) return;
      c.pick = host->id;
      if (kind_ == AppKind::mis) {
        c.task = Task::settle;
        return;
      }
      return next_target(ctx);
    }
    case Task::settle: {
      const Agent* s = ranked_here(ctx, c.at_rank);
      if (s && s->mark != Mark::undecided && s->courier.task == Task::none) next_target(ctx);
      return;
    }
    case Task::greedy:
    case Task::prune: {
      // While probing, the node's own agent is a hop away and unused.
      const Agent& host = c.probing ? ctx.self() : *ranked_here(ctx, c.at_rank);
      if (c.stage == 0) {
        if (!route_step(ctx, host.tree, c.target)) return;
        if (c.task == Task::prune && host.mark != Mark::in_set) return next_target(ctx);
        c.stage = 1;
        c.cursor = 0;
        c.found = kind_ == AppKind::mis ? false : c.task == Task::greedy ? host.dom_count == 0 : host.dom_count < 2;
      }
      return sweep_step(ctx, host);
    }
    case Task::route: {
      const Agent* host = ranked_here(ctx, c.at_rank);
      if (route_step(ctx, host->tree, c.target)) finish(ctx);
      return;
    }
    default: throw SimulationFault("app: unexpected courier task");
  }
}

// Advances to the next node of the current pass, or to the next pass.
void AppProgram::next_target(StepContext& ctx) {
  Courier& c = ctx.mut().courier;
  const int n = ctx.agent_count();
  c.stage = 0;
  if (c.task == Task::disperse || c.task == Task::settle) {
    if (c.token < n) {
      c.task = Task::disperse;
      ++c.token;
    } else {
      // Everyone is out; the leader handles its own node and, for MDS, runs both passes.
      c.task = Task::greedy;
      c.token = 1;
    }
  } else if (kind_ == AppKind::mis) {
    c.task = Task::route;
    c.token = 1;
  } else if (c.token < n) {
    ++c.token;
  } else if (c.task == Task::greedy) {
    c.task = Task::prune;
    c.token = 1;
  } else {
    c.task = Task::route;
    c.token = 1;
  }
  c.target = c.token;
  const Agent* host = ranked_here(ctx, c.at_rank);
  if (route_step(ctx, host->tree, c.target) && c.task == Task::route) finish(ctx);
}

// Per-node work of a selection pass: one sweep reading the neighbors, and for
// a change of membership, a second sweep updating their domination counts.
void AppProgram::sweep_step(StepContext& ctx, const Agent& host) {
  const Agent& me = ctx.self();
  Courier& c = ctx.mut().courier;
  const bool greedy = c.task == Task::greedy;
  if (c.probing) {
    c.probing = false;
    const Agent& far = settled_host(ctx);
    if (c.stage == 1) {
      if (kind_ == AppKind::mis) c.found |= far.mark == Mark::in_set;
      else if (greedy) c.found |= far.dom_count == 0;
      else c.found |= far.dom_count < 2;
    } else {
      const int delta = greedy ? 1 : -1;
      edit(ctx, far, [delta](Agent& a) { a.dom_count += delta; });
    }
    ctx.move(me.arrival_port);
    return;
  }
  if (c.cursor < ctx.degree()) {
    ++c.cursor;
    c.probing = true;
    ctx.move(c.cursor);
    return;
  }
  if (c.stage == 2) return next_target(ctx);
  bool change;
  Mark mark;
  if (kind_ == AppKind::mis) {
    change = false;
    mark = c.found ? Mark::out_of_set : Mark::in_set;
  } else if (greedy) {
    change = c.found;
    mark = change ? Mark::in_set : Mark::out_of_set;
  } else {
    change = !c.found;
    mark = change ? Mark::out_of_set : Mark::in_set;
  }
  const int delta = !change ? 0 : greedy ? 1 : -1;
  edit(ctx, host, [mark, delta](Agent& a) {
    a.mark = mark;
    a.dom_count += delta;
  });
  ctx.emit("select", std::string("in_set=") + (mark == Mark::in_set ? "1" : "0"));
  if (!change) return next_target(ctx);
  c.stage = 2;
  c.cursor = 0;
  sweep_step(ctx, host);
}

// An MIS settler probes every neighbor and joins unless one is already in the set.
bool AppProgram::member_step(StepContext& ctx) {
  if (kind_ != AppKind::mis) return false;
  const Agent& me = ctx.self();
  if (me.riding) {
    bool with_leader = false;
    for (const Agent* a : ctx.here()) with_leader |= a->id == leader_;
    if (!with_leader || ctx.peer_next(leader_).courier.pick != me.id) return false;
    Agent& nx = ctx.mut();
    nx.riding = false;
    nx.at_home = true;
    nx.courier.task = Task::settle;
    ctx.emit("settle");
    return true;
  }
  if (me.courier.task != Task::settle) return false;
  Agent& nx = ctx.mut();
  Courier& c = nx.courier;
  if (c.probing) {
    c.probing = false;
    for (const Agent* a : ctx.here())
      if (a->id != me.id && a->at_home && !a->riding && a->mark == Mark::in_set) c.found = true;
    nx.at_home = true;
    ctx.move(me.arrival_port);
    return true;
  }
  if (c.cursor < ctx.degree()) {
    ++c.cursor;
    c.probing = true;
    nx.at_home = false;
    ctx.move(c.cursor);
    return true;
  }
  nx.mark = c.found ? Mark::out_of_set : Mark::in_set;
  nx.courier = {};
  ctx.emit("select", std::string("in_set=") + (nx.mark == Mark::in_set ? "1" : "0"));
  return true;
}

std::vector<NodeId> selected_nodes(const World& w) {
  std::vector<NodeId> out;
  for (int k = 0; k < w.size(); ++k)
    if (w.agents()[k].mark == Mark::in_set) out.push_back(w.positions()[k]);
  std::sort(out.begin(), out.end());
  return out;
}

AppReport run_app(World& w, AppKind kind, long max_rounds) {
  AppReport rep;
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
  AppProgram prog(kind);
  rep.run = run(w, prog, budget);
  rep.app_rounds = rep.run.rounds;
  rep.run.rounds += rep.election.rounds;
  if (kind == AppKind::gather) {
    auto occ = w.occupancy();
    for (NodeId v = 0; v < static_cast<NodeId>(occ.size()); ++v)
      if (occ[v] == w.size()) rep.gather_node = v;
  } else {
    rep.set = selected_nodes(w);
  }
  return rep;
}

AppReport gather(World& w, long max_rounds) { return run_app(w, AppKind::gather, max_rounds); }
AppReport compute_mis(World& w, long max_rounds) { return run_app(w, AppKind::mis, max_rounds); }
AppReport compute_mds(World& w, long max_rounds) { return run_app(w, AppKind::mds, max_rounds); }

}  // namespace agentnet
