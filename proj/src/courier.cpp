#include "agentnet/courier.hpp"

namespace agentnet {

const Agent& settled_host(StepContext& ctx) {
  const Agent& me = ctx.self();
  for (const Agent* a : ctx.here())
    if (a->id != me.id && a->at_home && !a->riding) return *a;
  return me;
}

void edit(StepContext& ctx, const Agent& host, const std::function<void(Agent&)>& fn) {
  if (host.id == ctx.self().id) {
    fn(ctx.mut());
  } else {
    ctx.write(host.id, fn);
  }
}

void CourierProgram::start(World& w) {
  int leaders = 0;
  for (const Agent& a : w.agents())
    if (a.status == Status::leader) {
      leader_ = a.id;
      ++leaders;
    }
  if (leaders != 1) throw SimulationFault("expected exactly one leader, found " + std::to_string(leaders));
  // Numbering reads the election's traversal records, which a previous courier run consumed.
  if (w.agents()[w.index_of(leader_)].tree.rank != 0)
    throw std::invalid_argument("world was already used by a courier run; start from a fresh election");
  for (Agent& a : w.agents_mut()) {
    a.tree = {};
    a.comp = {};
    a.courier = {};
    a.riding = false;
    a.mark = Mark::undecided;
    a.dom_count = 0;
    a.done = a.id != leader_;
  }
  Agent& me = w.agents_mut()[w.index_of(leader_)];
  const int deg = w.graph().degree(w.position_of(leader_));
  me.records.clear();
  me.notes.clear();
  me.tree = {1, 0, 0, {}, 0};
  me.comp = {1, 0, {}, std::vector<bool>(static_cast<std::size_t>(deg), false)};
  me.courier.task = Task::rank_walk;
  me.courier.counter = 1;
  me.courier.at_rank = 1;
}

void CourierProgram::step(StepContext& ctx) {
  const Agent& me = ctx.self();
  if (me.id == leader_) {
    if (me.courier.task == Task::done) return;
    ctx.mut().courier.pick = 0;
    lead(ctx);
    return;
  }
  if (member_step(ctx)) return;
  bool with_leader = false;
  for (const Agent* a : ctx.here()) with_leader |= a->id == leader_;
  if (!with_leader) return;
  // Riders toggle on the leader's pick, and so do settled agents.
  const Agent& next = ctx.peer_next(leader_);
  bool riding = me.riding;
  if (next.courier.pick == me.id) {
    Agent& nx = ctx.mut();
    riding = !riding;
    nx.riding = riding;
    nx.at_home = !riding;
    ctx.emit(riding ? "pickup" : "settle");
    if (!riding) return;
  }
  if (riding)
    if (Port p = ctx.peer_move(leader_)) ctx.move(p);
}

bool CourierProgram::finished(const World& w) const {
  return w.agents()[w.index_of(leader_)].courier.task == Task::done;
}

bool CourierProgram::rank_step(StepContext& ctx, bool collect) {
  const Agent& me = ctx.self();
  Agent& nx = ctx.mut();
  Courier& c = nx.courier;
  const Agent& host = settled_host(ctx);

  if (me.courier.probing) {
    c.probing = false;
    bool child = false;
    if (host.id != me.id && host.tree.rank == 0)
      for (const auto& r : host.records)
        child |= r.kind == DfsKind::global && r.owner == me.id && r.stamp == me.el.stamp && r.parent == me.arrival_port;
    if (!child) {
      ctx.move(me.arrival_port);
      return false;
    }
    const int r = ++c.counter;
    TreeInfo t{r, me.arrival_port, c.at_rank, {}, 0};
    Component comp{r, 0, {}, std::vector<bool>(static_cast<std::size_t>(ctx.degree()), false)};
    edit(ctx, host, [t, comp](Agent& a) {
      a.tree = t;
      a.comp = comp;
      a.records.clear();
      a.notes.clear();
    });
    c.at_rank = r;
    c.cursor = 0;
    ctx.emit("rank", "rank=" + std::to_string(r));
    return false;
  }

  if (me.courier.ascending) {
    c.ascending = false;
    c.cursor = me.arrival_port;
    ChildRange ch{me.arrival_port, me.courier.carry};
    edit(ctx, host, [ch](Agent& a) { a.tree.children.push_back(ch); });
  }
  Port p = c.cursor + 1;
  if (p == host.tree.parent) ++p;
  if (p <= ctx.degree()) {
    c.cursor = p;
    c.probing = true;
    ctx.move(p);
    return false;
  }
  const int end = c.counter;
  edit(ctx, host, [end](Agent& a) { a.tree.subtree_end = end; });
  if (host.tree.parent == 0) return true;
  if (collect) c.pick = host.id;
  c.carry = host.tree.rank;
  c.at_rank = host.tree.parent_rank;
  c.ascending = true;
  ctx.move(host.tree.parent);
  return false;
}

bool CourierProgram::route_step(StepContext& ctx, const TreeInfo& here, int target) {
  if (here.rank == target) return true;
  Courier& c = ctx.mut().courier;
  if (target > here.rank && target <= here.subtree_end) {
    const ChildRange* via = nullptr;
    for (const auto& ch : here.children)
      if (ch.first_rank <= target) via = &ch;
    ctx.move(via->port);
    c.at_rank = via->first_rank;
  } else {
    if (here.parent == 0) throw SimulationFault("rank " + std::to_string(target) + " is outside the tree");
    ctx.move(here.parent);
    c.at_rank = here.parent_rank;
  }
  return false;
}

}  // namespace agentnet
