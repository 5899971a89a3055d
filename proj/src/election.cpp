#include "agentnet/election.hpp"

#include <algorithm>
#include <map>

#include "agentnet/padding.hpp"

namespace agentnet {

namespace {

TraversalKey key_of(const Agent& a) { return {a.el.stamp, a.id}; }

bool is_leaderish(const Agent& a) { return a.status == Status::local_leader || a.status == Status::leader; }

bool multiplicity_candidate(const Agent& a) {
  return a.origin == Origin::multiplicity && a.status == Status::candidate;
}

// Claim trip: two rounds holding the claimed node, then one step to the DFS parent.
constexpr long kClaimAtParent = 2;

bool parked_at_parent(const Agent& a) {
  return (a.el.mode == ElMode::claim_trip && a.el.counter == kClaimAtParent) || a.el.mode == ElMode::waiting;
}

// The agent anchored at the current node, if present. At most one exists.
const Agent* owner_of(std::span<const Agent* const> here, AgentId except) {
  for (const Agent* a : here)
    if (a->at_home && a->id != except) return a;
  return nullptr;
}

const DfsRecord* find_record(const Agent& a, DfsKind kind, long stamp, AgentId owner) {
  for (const auto& r : a.records)
    if (r.kind == kind && r.stamp == stamp && r.owner == owner) return &r;
  return nullptr;
}

void upsert_record(Agent& a, const DfsRecord& rec) {
  for (auto& r : a.records)
    if (r.kind == rec.kind && r.stamp == rec.stamp && r.owner == rec.owner) {
      r = rec;
      return;
    }
  a.records.push_back(rec);
}

void erase_record(Agent& a, DfsKind kind, long stamp, AgentId owner) {
  std::erase_if(a.records, [&](const DfsRecord& r) { return r.kind == kind && r.stamp == stamp && r.owner == owner; });
}

void settle_idle(Agent& a, Status s) {
  a.status = s;
  a.el.mode = ElMode::idle;
  a.at_home = true;
  a.done = true;
  a.el.away = 0;
}

std::string kv(const char* k, long v) { return std::string(k) + "=" + std::to_string(v); }

}  // namespace

// ---------------------------------------------------------------- setup

void ElectionProgram::start(World& w) {
  auto& agents = w.agents_mut();
  const auto& pos = w.positions();
  std::map<NodeId, std::vector<int>> groups;
  for (std::size_t k = 0; k < agents.size(); ++k) {
    Agent& a = agents[k];
    a.done = false;
    a.el = ElectionState{};
    if (a.init_alone) {
      int deg = w.graph().degree(pos[k]);
      a.el.mode = ElMode::sweep;
      a.el.home_degree = deg;
      a.el.min_nbr_degree = deg;
      a.el.equal_nbr.assign(static_cast<std::size_t>(deg), false);
      a.el.met.assign(static_cast<std::size_t>(deg), false);
      a.at_home = true;
    } else {
      groups[pos[k]].push_back(static_cast<int>(k));
    }
  }
  // Agents are sorted by id, so each group lists ascending ids.
  for (auto& [node, members] : groups) {
    Agent& head = agents[members.front()];
    Agent& keeper = agents[members.back()];
    settle_idle(keeper, Status::non_candidate);
    keeper.records.push_back({DfsKind::multiplicity, 0, head.id, 0, 1});
    head.el.mode = ElMode::head;
    head.el.probe = Probe::arrived;
    for (std::size_t j = 1; j + 1 < members.size(); ++j) {
      agents[members[j]].el.mode = ElMode::follower;
      agents[members[j]].el.head = head.id;
    }
  }
}

void ElectionProgram::step(StepContext& ctx) {
  const Agent& me = ctx.self();
  if (me.el.mode == ElMode::idle) return;
  // A local leader at home steps down for a head parked here on its claim trip.
  if (me.status == Status::local_leader && me.at_home) {
    for (const Agent* a : ctx.here())
      if (a->id != me.id && parked_at_parent(*a)) {
        Agent& nx = ctx.mut();
        settle_idle(nx, Status::non_candidate);
        ctx.emit("demote", "reason=claim_parked");
        return;
      }
  }
  switch (me.el.mode) {
    case ElMode::sweep:
    case ElMode::padding:
    case ElMode::probe: step_singleton(ctx); break;
    case ElMode::inform: step_inform(ctx); break;
    case ElMode::follower: step_follower(ctx); break;
    case ElMode::head:
    case ElMode::global: step_traversal(ctx); break;
    case ElMode::claim_trip:
    case ElMode::waiting:
    case ElMode::claim_back: step_claim(ctx); break;
    case ElMode::retreat: step_retreat(ctx); break;
    case ElMode::idle: break;
  }
}

// ---------------------------------------------------------------- singleton

namespace {

void begin_global(Agent& a) {
  a.el.mode = ElMode::global;
  a.el.counter = 0;
  a.el.forward = false;
  a.el.probe = Probe::arrived;
  a.el.away = 0;
  a.at_home = true;
  a.records.push_back({DfsKind::global, a.el.stamp, a.id, 0, 1});
}

// What a candidate singleton learns from the agents around it.
void observe(StepContext& ctx, ElectionState& e) {
  const Agent& me = ctx.self();
  const bool home = me.el.away == 0;
  for (const Agent* a : ctx.here()) {
    if (a->id == me.id) continue;
    if (a->origin == Origin::multiplicity || is_leaderish(*a) || a->el.mode == ElMode::global ||
        a->el.mode == ElMode::retreat) {
      e.demote = true;
      continue;
    }
    if (home) {
      // A singleton visiting our home came from the neighbor behind its arrival port.
      if (a->at_home || a->arrival_port == 0) continue;
      e.met[a->arrival_port - 1] = true;
      if (a->el.home_degree < e.home_degree) e.demote = true;
      if (a->el.home_degree == e.home_degree && a->id > me.id) e.demote = true;
    } else if (a->at_home) {
      e.met[me.el.away - 1] = true;
      if (ctx.degree() == e.home_degree && a->id > me.id) e.demote = true;
    }
  }
  if (!home) {
    int d = ctx.degree();
    e.min_nbr_degree = std::min(e.min_nbr_degree, d);
    e.max_nbr_degree = std::max(e.max_nbr_degree, d);
    e.equal_nbr[me.el.away - 1] = d == e.home_degree;
  }
}

bool all_met(const ElectionState& e) { return std::all_of(e.met.begin(), e.met.end(), [](bool b) { return b; }); }

bool unmet_equal(const ElectionState& e) {
  for (std::size_t p = 0; p < e.met.size(); ++p)
    if (e.equal_nbr[p] && !e.met[p]) return true;
  return false;
}

}  // namespace

void ElectionProgram::step_singleton(StepContext& ctx) {
  const Agent& me = ctx.self();
  Agent& nx = ctx.mut();
  ElectionState& e = nx.el;
  observe(ctx, e);
  const int deg = e.home_degree;

  if (me.el.away != 0) {  // at a neighbor: always head straight back
    ctx.move(me.arrival_port);
    e.away = 0;
    nx.at_home = true;
    ++e.counter;
    return;
  }
  if (e.demote || (e.mode != ElMode::sweep && e.min_nbr_degree < deg)) {
    settle_idle(nx, Status::non_candidate);
    ctx.emit("demote");
    return;
  }
  auto visit = [&](Port p) {
    ctx.move(p);
    e.away = p;
    nx.at_home = false;
    ++e.counter;
  };
  auto promote = [&] {
    nx.status = Status::local_leader;
    e.stamp = ctx.round();
    e.mode = ElMode::inform;
    e.counter = 0;
    ctx.emit("promote_local", kv("stamp", e.stamp));
  };

  if (e.mode == ElMode::sweep) {
    if (e.counter < 2L * deg) {
      if (e.counter == 0) ctx.emit("sweep");
      visit(static_cast<Port>(e.counter / 2 + 1));
      return;
    }
    if (e.min_nbr_degree < deg) {
      settle_idle(nx, Status::non_candidate);
      ctx.emit("demote", "reason=smaller_neighbor");
      return;
    }
    if (all_met(e)) return promote();
    e.counter = 0;
    if (unmet_equal(e)) {
      e.mode = ElMode::padding;
      ctx.emit("sweep", "kind=padding");
    } else {
      e.mode = ElMode::probe;
      e.cursor = 0;
    }
    // fall through into the first round of the new schedule
  }

  if (e.mode == ElMode::padding) {
    if (all_met(e)) return promote();
    const std::string bits = pad_id(binary_of(me.id)).bits;
    const long block = 2L * deg;
    if (e.counter < static_cast<long>(bits.size()) * block) {
      char bit = bits[static_cast<std::size_t>(e.counter / block)];
      long j = e.counter % block;
      if (bit == '1') {
        visit(static_cast<Port>(j / 2 + 1));  // j is even whenever we are home
      } else {
        ++e.counter;
      }
      return;
    }
    e.padded = true;
    if (unmet_equal(e)) {
      settle_idle(nx, Status::non_candidate);
      ctx.emit("demote", "reason=unmet_equal_neighbor");
      return;
    }
    e.mode = ElMode::probe;
    e.counter = 0;
    e.cursor = 0;
  }

  // probe: cycle over unmet larger-degree neighbors, then rest for a while
  if (all_met(e)) return promote();
  if (e.counter > 0) {
    --e.counter;
    return;
  }
  for (Port p = e.cursor + 1; p <= deg; ++p)
    if (!e.met[p - 1] && !e.equal_nbr[p - 1]) {
      ctx.emit("probe", kv("port", p));
      e.cursor = p;
      ctx.move(p);
      e.away = p;
      nx.at_home = false;
      return;
    }
  e.cursor = 0;
  // A probe trip plus this rest spans 2 * max_nbr_degree rounds; even, so visits keep their parity.
  e.counter = std::max(0L, 2L * e.max_nbr_degree - 4);
}

void ElectionProgram::step_inform(StepContext& ctx) {
  const Agent& me = ctx.self();
  Agent& nx = ctx.mut();
  ElectionState& e = nx.el;
  const int deg = e.home_degree;
  if (me.el.away != 0) {
    if (me.el.away == 1 && !me.el.note_placed) {
      if (const Agent* o = owner_of(ctx.here(), me.id)) {
        HomeNote note{me.id, me.el.stamp, me.arrival_port, NoteKind::confirmed};
        ctx.write(o->id, [note](Agent& a) { a.notes.push_back(note); });
        e.note_placed = true;
        ctx.emit("write_home_note", kv("holder", o->id));
      }
    }
    ctx.move(me.arrival_port);
    e.away = 0;
    nx.at_home = true;
    ++e.counter;
    return;
  }
  if (deg == 0 || (e.note_placed && e.counter >= 2L * deg)) {
    begin_global(nx);
    return;
  }
  if (e.counter < 2L * deg) {
    Port p = static_cast<Port>(e.counter / 2 + 1);
    ctx.move(p);
    e.away = p;
    nx.at_home = false;
    ++e.counter;
    return;
  }
  // Retry the note; the extra stay flips our parity against a sweeping holder.
  if ((e.counter - 2L * deg) % 3 == 0) {
    ++e.counter;
    return;
  }
  ctx.move(1);
  e.away = 1;
  nx.at_home = false;
  ++e.counter;
}

// ---------------------------------------------------------------- followers

void ElectionProgram::step_follower(StepContext& ctx) {
  const Agent& me = ctx.self();
  const Agent& head = ctx.peer_next(me.el.head);
  if (head.el.settle_pick == me.id && head.el.mode == ElMode::head) {
    Agent& nx = ctx.mut();
    settle_idle(nx, Status::non_candidate);
    nx.records.push_back({DfsKind::multiplicity, 0, head.id, head.el.came_via, 1});
    ctx.emit("settle", kv("head", head.id));
    return;
  }
  Port p = ctx.peer_move(me.el.head);
  if (p != 0) ctx.move(p);
}

// ---------------------------------------------------------------- traversals

namespace {

// Home notes visible at a neighbor of the node under confirmation; `back` is
// the port leading from here to that node.
void collect_notes(std::span<const Agent* const> here, AgentId self, Port back, ElectionState& e) {
  for (const Agent* a : here) {
    if (a->id == self) continue;
    if (a->el.mode == ElMode::claim_trip && a->el.counter == kClaimAtParent && a->arrival_port == back) {
      e.verdict = Verdict::home_waiting;
      continue;
    }
    if (!a->at_home && a->el.mode != ElMode::waiting) continue;
    for (const auto& n : a->notes) {
      if (n.port != back) continue;
      if (n.kind == NoteKind::waiting && a->el.mode == ElMode::waiting) {
        e.verdict = Verdict::home_waiting;
      } else if (n.kind == NoteKind::confirmed && a->at_home && e.verdict != Verdict::home_waiting) {
        TraversalKey k{n.stamp, n.leader};
        if (e.verdict != Verdict::home_confirmed || k > TraversalKey{e.verdict_stamp, e.verdict_leader}) {
          e.verdict = Verdict::home_confirmed;
          e.verdict_stamp = n.stamp;
          e.verdict_leader = n.leader;
        }
      }
    }
  }
}

}  // namespace

void ElectionProgram::step_traversal(StepContext& ctx) {
  const Agent& me = ctx.self();
  const bool global = me.el.mode == ElMode::global;
  Agent& nx = ctx.mut();
  ElectionState& e = nx.el;
  e.settle_pick = 0;
  const TraversalKey mine = key_of(me);
  const DfsKind kind = global ? DfsKind::global : DfsKind::multiplicity;
  const long stamp = global ? me.el.stamp : 0;
  const auto here = ctx.here();

  if (me.el.probe == Probe::at_neighbor) {
    collect_notes(here, me.id, me.arrival_port, e);
    ctx.move(me.arrival_port);
    e.probe = Probe::returned;
    return;
  }
  if (me.el.probe == Probe::arrived && me.arrival_port != 0) e.came_via = me.arrival_port;

  const Agent* owner = me.at_home ? &me : owner_of(here, me.id);

  auto stop = [&](const char* why) {
    nx.status = Status::non_candidate;
    e.mode = ElMode::retreat;
    ctx.emit("demote", std::string("reason=") + why);
  };
  if (global) {
    for (const Agent* a : here) {
      if (a->id == me.id) continue;
      if (multiplicity_candidate(*a)) return stop("multiplicity_candidate");
      if (a->el.mode == ElMode::global && key_of(*a) > mine) return stop("larger_traversal");
    }
    if (owner && owner != &me) {
      if (is_leaderish(*owner) && key_of(*owner) > mine) return stop("larger_leader");
      for (const auto& r : owner->records)
        if (r.kind == DfsKind::global && TraversalKey{r.stamp, r.owner} > mine) return stop("larger_record");
    }
  }

  if (owner) {
    e.probe = Probe::arrived;
    const DfsRecord* found = find_record(*owner, kind, stamp, me.id);
    if (me.el.forward && found) {  // non-tree edge: step back and keep exploring there
      ctx.move(e.came_via);
      e.forward = false;
      if (global && e.counter == 0) nx.at_home = true;
      ctx.emit("dfs_backtrack", "edge=non_tree");
      return;
    }
    DfsRecord rec;
    if (found) {
      rec = *found;
    } else {
      if (!me.el.forward) throw SimulationFault("traversal of agent " + std::to_string(me.id) + " lost its record");
      rec = {kind, stamp, me.id, e.came_via, 1};
      if (global) ++e.counter;
    }
    Port p = rec.next;
    while (p <= ctx.degree() && p == rec.parent) ++p;
    bool exploring = p <= ctx.degree();
    if (exploring) rec.next = p + 1;
    if (!found || exploring) {
      if (owner == &me) {
        upsert_record(nx, rec);
      } else {
        ctx.write(owner->id, [rec](Agent& a) { upsert_record(a, rec); });
      }
    }
    if (exploring) {
      ctx.move(p);
      if (owner == &me) nx.at_home = false;
      e.forward = true;
      ctx.emit("dfs_forward", kv("port", p));
      return;
    }
    if (rec.parent != 0) {
      ctx.move(rec.parent);
      e.forward = false;
      if (global && --e.counter == 0) nx.at_home = true;
      ctx.emit("dfs_backtrack", kv("port", rec.parent));
      return;
    }
    if (!global) throw SimulationFault("multiplicity traversal of agent " + std::to_string(me.id) + " exhausted");
    nx.all_edges_visited = true;
    settle_idle(nx, Status::leader);
    ctx.emit("promote_global");
    return;
  }

  // No owner here.
  if (!me.el.forward) return;  // our record travels with the absent owner; wait for it
  switch (me.el.probe) {
    case Probe::arrived:
      e.probe = Probe::waited;
      return;
    case Probe::waited:
      e.verdict = Verdict::truly_empty;
      e.verdict_stamp = 0;
      e.verdict_leader = 0;
      e.confirm_port = 1;
      ctx.move(1);
      e.probe = Probe::at_neighbor;
      ctx.emit("confirm_empty", kv("degree", ctx.degree()));
      return;
    case Probe::returned:
      if (me.el.confirm_port < ctx.degree()) {
        ++e.confirm_port;
        ctx.move(e.confirm_port);
        e.probe = Probe::at_neighbor;
      } else {
        e.probe = Probe::back_waited;
      }
      return;
    case Probe::wait_owner:
    case Probe::at_neighbor:
      return;
    case Probe::back_waited:
      break;
  }

  ctx.emit("confirm_empty", std::string("verdict=") +
                                (e.verdict == Verdict::truly_empty    ? "truly_empty"
                                 : e.verdict == Verdict::home_waiting ? "home_of_waiting_candidate"
                                                                      : "home_of_local_leader"));
  if (global) {
    if (e.verdict == Verdict::home_confirmed && e.verdict_leader == me.id) {  // our own home, reached sideways
      ctx.move(e.came_via);
      e.forward = false;
      e.probe = Probe::arrived;
      return;
    }
    if (e.verdict == Verdict::truly_empty) return stop("empty_node");
    if (e.verdict == Verdict::home_waiting) return stop("waiting_home");
    if (TraversalKey{e.verdict_stamp, e.verdict_leader} > mine) return stop("larger_home");
    e.probe = Probe::wait_owner;
    return;
  }
  if (e.verdict != Verdict::truly_empty) {
    e.probe = Probe::wait_owner;
    return;
  }
  // Several heads may confirm the same node together; one of them fills it.
  bool win = true;
  for (const Agent* a : here)
    if (a->id != me.id && a->el.mode == ElMode::head && a->el.probe == Probe::back_waited &&
        a->el.verdict == Verdict::truly_empty && a->el.forward)
      if (opt_.larger_head_settles ? a->id > me.id : a->id < me.id) win = false;
  e.probe = Probe::arrived;
  if (!win) return;  // the winner's agent is the owner next round
  AgentId pick = 0;
  for (const Agent* a : here)
    if (a->el.mode == ElMode::follower && a->el.head == me.id) pick = std::max(pick, a->id);
  if (pick != 0) {
    e.settle_pick = pick;
    e.forward = false;
    return;
  }
  e.mode = ElMode::claim_trip;
  e.counter = 0;
  nx.at_home = true;
  ctx.emit("settle", "kind=claim");
}

// ---------------------------------------------------------------- claims

void ElectionProgram::step_claim(StepContext& ctx) {
  const Agent& me = ctx.self();
  Agent& nx = ctx.mut();
  ElectionState& e = nx.el;
  if (me.el.mode == ElMode::claim_trip && me.el.counter < kClaimAtParent) {
    if (++e.counter == kClaimAtParent) {
      ctx.move(me.el.came_via);
      nx.at_home = false;
    }
    return;
  }
  if (me.el.mode == ElMode::claim_back) {
    for (const Agent* a : ctx.here())
      if (a->id != me.id && parked_at_parent(*a)) {
        settle_idle(nx, Status::non_candidate);
        ctx.emit("settle", "kind=chain");
        return;
      }
    nx.status = Status::local_leader;
    e.stamp = ctx.round();
    nx.at_home = true;
    ctx.emit("promote_local", kv("stamp", e.stamp));
    begin_global(nx);
    return;
  }
  // At the DFS parent, on arrival or while waiting.
  Port back = me.el.mode == ElMode::waiting ? me.notes.back().port : me.arrival_port;
  if (const Agent* o = owner_of(ctx.here(), me.id)) {
    HomeNote note{me.id, ctx.round() + 1, back, NoteKind::confirmed};
    ctx.write(o->id, [note](Agent& a) { a.notes.push_back(note); });
    if (me.el.mode == ElMode::waiting) nx.notes.pop_back();
    ctx.move(back);
    e.mode = ElMode::claim_back;
    ctx.emit("write_home_note", kv("holder", o->id));
    return;
  }
  if (me.el.mode != ElMode::waiting) {
    e.mode = ElMode::waiting;
    nx.notes.push_back({me.id, 0, back, NoteKind::waiting});
  }
}

// ---------------------------------------------------------------- retreat

void ElectionProgram::step_retreat(StepContext& ctx) {
  const Agent& me = ctx.self();
  Agent& nx = ctx.mut();
  ElectionState& e = nx.el;
  if (me.el.forward) {  // this node never got our record
    ctx.move(me.el.came_via);
    e.forward = false;
    e.probe = Probe::arrived;
    return;
  }
  if (me.el.counter == 0) {
    erase_record(nx, DfsKind::global, me.el.stamp, me.id);
    settle_idle(nx, Status::non_candidate);
    return;
  }
  const Agent* owner = owner_of(ctx.here(), me.id);
  if (!owner) return;
  const DfsRecord* rec = find_record(*owner, DfsKind::global, me.el.stamp, me.id);
  if (!rec) throw SimulationFault("retreat of agent " + std::to_string(me.id) + " lost its record");
  Port up = rec->parent;
  long st = me.el.stamp;
  AgentId id = me.id;
  ctx.write(owner->id, [st, id](Agent& a) { erase_record(a, DfsKind::global, st, id); });
  ctx.move(up);
  --e.counter;
}

RunReport elect_leader(World& w, long max_rounds, ElectionOptions opt) {
  ElectionProgram prog(opt);
  return run(w, prog, max_rounds);
}

}  // namespace agentnet
