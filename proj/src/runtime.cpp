#include "agentnet/runtime.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace agentnet {

const char* to_string(Status s) {
  switch (s) {
    case Status::candidate: return "candidate";
    case Status::non_candidate: return "non_candidate";
    case Status::local_leader: return "local_leader";
    case Status::leader: return "leader";
  }
  return "?";
}

const char* to_string(Termination t) {
  return t == Termination::completed ? "completed" : "max_rounds_exceeded";
}

int bits_for(long max_value) {
  int b = 1;
  while (b < 62 && (1L << b) <= max_value) ++b;
  return b;
}

// ---- StepContext ----

long StepContext::round() const { return world_->round_; }
const Agent& StepContext::self() const { return world_->agents_[index_]; }

Agent& StepContext::mut() {
  if (!mutated_) {
    world_->next_[index_] = world_->agents_[index_];
    world_->mutated_[index_] = 1;
    mutated_ = true;
  }
  return world_->next_[index_];
}

std::span<const Agent* const> StepContext::here() const {
  const auto& v = world_->at_node_[world_->pos_[index_]];
  return {v.data(), v.size()};
}

int StepContext::degree() const { return world_->graph_->degree(world_->pos_[index_]); }

const Rational& StepContext::weight(Port p) const {
  if (p < 1 || p > degree()) throw SimulationFault("weight lookup on invalid port");
  return world_->graph_->slot(world_->pos_[index_], p).weight;
}

const Widths& StepContext::widths() const { return world_->widths_; }
int StepContext::agent_count() const { return world_->size(); }

void StepContext::move(Port p) {
  if (p < 1 || p > degree()) {
    std::ostringstream msg;
    msg << "round " << world_->round_ << " agent " << self().id << " node " << world_->pos_[index_]
        << ": port " << p << " out of range 1.." << degree();
    throw SimulationFault(msg.str());
  }
  move_ = p;
}

void StepContext::write(AgentId target, std::function<void(Agent&)> fn) {
  int t = world_->index_of(target);
  if (t < 0 || world_->pos_[t] != world_->pos_[index_])
    throw SimulationFault("round " + std::to_string(world_->round_) + " agent " + std::to_string(self().id) +
                          ": write to agent " + std::to_string(target) + " which is not co-located");
  world_->writes_[index_].push_back({t, std::move(fn)});
}

void StepContext::emit(std::string_view action, const std::string& detail) {
  if (world_->trace_) world_->trace_->event(world_->round_, self().id, world_->pos_[index_], action, detail);
}

const Agent& StepContext::peer_next(AgentId peer) const {
  int j = world_->settle_peer(index_, peer);
  return world_->mutated_[j] ? world_->next_[j] : world_->agents_[j];
}

Port StepContext::peer_move(AgentId peer) const {
  return world_->moves_[world_->settle_peer(index_, peer)];
}

// ---- Program ----

bool Program::finished(const World& w) const {
  return std::all_of(w.agents().begin(), w.agents().end(), [](const Agent& a) { return a.done; });
}

void IdleProgram::start(World& w) {
  for (auto& a : w.agents_mut()) a.done = true;
}

// ---- World ----

World::World(std::shared_ptr<const PortGraph> g, std::vector<AgentId> ids, std::vector<NodeId> positions)
    : graph_(std::move(g)) {
  if (ids.size() != positions.size()) throw std::invalid_argument("ids and positions differ in length");
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
  for (auto i : order) {
    if (ids[i] < 1) throw std::invalid_argument("agent ids must be positive");
    if (positions[i] < 0 || positions[i] >= graph_->node_count()) throw std::invalid_argument("position off graph");
    Agent a;
    a.id = ids[i];
    agents_.push_back(a);
    pos_.push_back(positions[i]);
  }
  for (std::size_t k = 1; k < agents_.size(); ++k)
    if (agents_[k].id == agents_[k - 1].id) throw std::invalid_argument("duplicate agent id");
  max_id_ = agents_.empty() ? 1 : agents_.back().id;
  index_by_id_.assign(static_cast<std::size_t>(max_id_) + 1, -1);
  for (std::size_t k = 0; k < agents_.size(); ++k) index_by_id_[agents_[k].id] = static_cast<int>(k);
  std::vector<int> count(static_cast<std::size_t>(graph_->node_count()), 0);
  for (NodeId v : pos_) ++count[v];
  for (std::size_t k = 0; k < agents_.size(); ++k) {
    agents_[k].init_alone = count[pos_[k]] == 1;
    agents_[k].origin = agents_[k].init_alone ? Origin::singleton : Origin::multiplicity;
  }
  widths_.id = bits_for(max_id_);
  widths_.port = bits_for(graph_->max_degree());
  widths_.degree = bits_for(graph_->max_degree());
  set_round_budget(64L * std::max(1, graph_->edge_count()));
  at_node_.resize(static_cast<std::size_t>(graph_->node_count()));
  peak_.assign(agents_.size(), 0);
  refresh_memory();
}

int World::index_of(AgentId id) const {
  if (id < 0 || id >= static_cast<AgentId>(index_by_id_.size())) return -1;
  return index_by_id_[id];
}

std::vector<int> World::occupancy() const {
  std::vector<int> occ(static_cast<std::size_t>(graph_->node_count()), 0);
  for (NodeId v : pos_) ++occ[v];
  return occ;
}

void World::set_round_budget(long max_rounds) { widths_.stamp = bits_for(round_ + max_rounds); }

void World::refresh_memory() {
  for (std::size_t k = 0; k < agents_.size(); ++k) peak_[k] = std::max(peak_[k], memory_bits(agents_[k], widths_));
}

void World::compute(int k) {
  if (state_[k] == 2) return;
  state_[k] = 1;
  StepContext ctx;
  ctx.world_ = this;
  ctx.index_ = k;
  program_->step(ctx);
  moves_[k] = ctx.move_;
  state_[k] = 2;
}

int World::settle_peer(int self, AgentId peer) {
  int j = index_of(peer);
  if (j < 0 || j == self || pos_[j] != pos_[self])
    throw SimulationFault("agent " + std::to_string(peer) + " is not a co-located peer");
  if (state_[j] == 1) throw SimulationFault("cyclic peer dependency at agent " + std::to_string(peer));
  compute(j);
  return j;
}

void World::step(Program& program) {
  const std::size_t n = agents_.size();
  next_.resize(n);
  mutated_.assign(n, 0);
  moves_.assign(n, 0);
  writes_.resize(n);
  for (auto& w : writes_) w.clear();
  for (int v : touched_nodes_) at_node_[v].clear();
  touched_nodes_.clear();
  for (std::size_t k = 0; k < n; ++k) {
    auto& list = at_node_[pos_[k]];
    if (list.empty()) touched_nodes_.push_back(pos_[k]);
    list.push_back(&agents_[k]);
  }

  state_.assign(n, 0);
  program_ = &program;
  for (std::size_t k = 0; k < n; ++k) compute(static_cast<int>(k));
  program_ = nullptr;

  std::vector<char> dirty(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    if (mutated_[k]) {
      std::swap(agents_[k], next_[k]);
      dirty[k] = 1;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (auto& w : writes_[k]) {
      if (trace_ && trace_->level() >= 1)
        trace_->event(round_, agents_[k].id, pos_[k], "write", "target=" + std::to_string(agents_[w.target].id));
      w.fn(agents_[w.target]);
      dirty[w.target] = 1;
    }
  for (std::size_t k = 0; k < n; ++k) {
    Port p = moves_[k];
    if (p != 0) {
      const PortSlot& s = graph_->slot(pos_[k], p);
      if (trace_) trace_->event(round_, agents_[k].id, pos_[k], "move", "port=" + std::to_string(p));
      pos_[k] = s.neighbor;
      agents_[k].arrival_port = s.reverse;
      dirty[k] = 1;
    } else if (agents_[k].arrival_port != 0) {
      agents_[k].arrival_port = 0;
      dirty[k] = 1;
    }
  }
  ++round_;
  for (std::size_t k = 0; k < n; ++k)
    if (dirty[k]) peak_[k] = std::max(peak_[k], memory_bits(agents_[k], widths_));
  if (trace_ && trace_->level() >= 2)
    for (std::size_t k = 0; k < n; ++k) {
      const Agent& a = agents_[k];
      std::ostringstream d;
      d << "status=" << to_string(a.status) << " mode=" << static_cast<int>(a.el.mode) << " at_home=" << a.at_home
        << " records=" << a.records.size() << " notes=" << a.notes.size() << " bits=" << memory_bits(a, widths_);
      trace_->event(round_, a.id, pos_[k], "snapshot", d.str());
    }
}

// ---- construction and runs ----

World init_world(std::shared_ptr<const PortGraph> g, const Placement& placement, const IdPolicy& ids) {
  const int n = g->node_count();
  std::vector<NodeId> pos(static_cast<std::size_t>(n));
  switch (placement.kind) {
    case Placement::Kind::dispersed:
      std::iota(pos.begin(), pos.end(), 0);
      break;
    case Placement::Kind::rooted:
      if (placement.node < 0 || placement.node >= n) throw std::invalid_argument("rooted node out of range");
      std::fill(pos.begin(), pos.end(), placement.node);
      break;
    case Placement::Kind::general: {
      Rng rng(placement.seed);
      for (auto& p : pos) p = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
      break;
    }
    case Placement::Kind::explicit_map:
      if (static_cast<int>(placement.map.size()) != n)
        throw std::invalid_argument("explicit placement lists " + std::to_string(placement.map.size()) +
                                    " agents but the graph has " + std::to_string(n) + " nodes");
      pos = placement.map;
      break;
  }
  std::vector<AgentId> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 1);
  if (ids.kind == IdPolicy::Kind::seeded_permutation) {
    Rng rng(ids.seed ^ 0x9e3779b97f4a7c15ULL);
    rng.shuffle(id);
  }
  return World(std::move(g), std::move(id), std::move(pos));
}

World init_world(const PortGraph& g, const Placement& placement, const IdPolicy& ids) {
  return init_world(std::make_shared<const PortGraph>(g), placement, ids);
}

RunReport run(World& w, Program& program, long max_rounds, const StepHook& after_step) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be positive");
  w.set_round_budget(max_rounds);
  program.start(w);
  w.refresh_memory();
  RunReport rep;
  const long start = w.round();
  while (!program.finished(w)) {
    if (w.round() - start >= max_rounds) {
      rep.termination = Termination::max_rounds_exceeded;
      break;
    }
    w.step(program);
    if (after_step) after_step(w);
  }
  rep.rounds = w.round() - start;
  rep.peak_bits = w.peak_bits();
  for (const auto& a : w.agents()) {
    rep.statuses.push_back(a.status);
    if (a.status == Status::leader && !rep.leader) rep.leader = a.id;
  }
  return rep;
}

}  // namespace agentnet
