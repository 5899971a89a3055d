#include "agentnet/mpsim.hpp"

#include <algorithm>

#include "agentnet/election.hpp"

namespace agentnet {

MpAlgorithm flood_algorithm(AgentId source, long rounds) {
  MpAlgorithm a;
  a.name = "flood";
  a.rounds = rounds;
  a.init = [source](AgentId id, int) { return MpState{id == source ? 1 : 0, 0}; };
  a.send = [](const MpState& s, int degree) {
    return Messages(static_cast<std::size_t>(degree), s.value ? std::optional<long>(1) : std::nullopt);
  };
  a.receive = [](const MpState& s, const Messages& inbox) {
    MpState out = s;
    for (const auto& m : inbox)
      if (m) out.value = 1;
    return out;
  };
  return a;
}

MpAlgorithm bfs_label_algorithm(AgentId root, long rounds) {
  MpAlgorithm a;
  a.name = "bfs_label";
  a.rounds = rounds;
  a.init = [root](AgentId id, int) { return MpState{id == root ? 0 : -1, 0}; };
  a.send = [](const MpState& s, int degree) {
    return Messages(static_cast<std::size_t>(degree), s.value >= 0 ? std::optional<long>(s.value) : std::nullopt);
  };
  a.receive = [](const MpState& s, const Messages& inbox) {
    MpState out = s;
    for (const auto& m : inbox)
      if (m && (out.value < 0 || *m + 1 < out.value)) out.value = *m + 1;
    return out;
  };
  return a;
}

MpAlgorithm max_id_leader_algorithm(long rounds) {
  MpAlgorithm a;
  a.name = "max_id_leader";
  a.rounds = rounds;
  a.init = [](AgentId id, int) { return MpState{id, id}; };
  a.send = [](const MpState& s, int degree) { return Messages(static_cast<std::size_t>(degree), s.value); };
  a.receive = [](const MpState& s, const Messages& inbox) {
    MpState out = s;
    for (const auto& m : inbox)
      if (m) out.value = std::max(out.value, *m);
    return out;
  };
  return a;
}

MpAlgorithm mp_algorithm(const std::string& name, AgentId source, long rounds) {
  if (name == "flood") return flood_algorithm(source, rounds);
  if (name == "bfs_label") return bfs_label_algorithm(source, rounds);
  if (name == "max_id_leader") return max_id_leader_algorithm(rounds);
  throw std::invalid_argument("unknown message-passing algorithm '" + name + "'");
}

long mp_round_length(const MpConfig& cfg) { return 2L * cfg.max_degree * meeting_bits(cfg.n, cfg.c); }

namespace {

void fold_inbox(MpSlot& s, const MpAlgorithm& alg) {
  if (!s.pending) return;
  for (std::size_t i = 0; i < s.outbox.size(); ++i)
    if (s.outbox[i] && !s.delivered[i])
      throw SimulationFault("mp: message on port " + std::to_string(i + 1) + " of round " + std::to_string(s.round) +
                            " was never delivered");
  s.state = alg.receive(s.state, s.inbox);
  s.pending = false;
}

void begin_round(MpSlot& s, const MpAlgorithm& alg, int degree) {
  s.outbox = alg.send(s.state, degree);
  if (static_cast<int>(s.outbox.size()) != degree) throw SimulationFault("mp: outbox size differs from degree");
  s.delivered.assign(static_cast<std::size_t>(degree), false);
  s.inbox.assign(static_cast<std::size_t>(degree), std::nullopt);
}

}  // namespace

MpState settled_state(const Agent& a, const MpAlgorithm& alg) {
  return a.mp.pending ? alg.receive(a.mp.state, a.mp.inbox) : a.mp.state;
}

void MpProgram::start(World& w) {
  const PortGraph& g = w.graph();
  if (g.node_count() != cfg_.n) throw std::invalid_argument("mp: n differs from the graph size");
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.degree(v) > cfg_.max_degree) throw std::invalid_argument("mp: a node exceeds the stated max degree");
  length_ = mp_round_length(cfg_);
  schedules_.clear();
  for (int k = 0; k < w.size(); ++k) {
    Agent& a = w.agents_mut()[k];
    const int degree = g.degree(w.positions()[k]);
    a.mp = {};
    a.mp.state = alg_.init(a.id, degree);
    a.at_home = true;
    a.done = alg_.rounds == 0;
    if (length_ == 0) a.done = true;  // the driver runs movement-free rounds
    else schedules_[a.id] = meeting_schedule(a.id, cfg_.n, cfg_.max_degree, degree, cfg_.c);
  }
}

void MpProgram::step(StepContext& ctx) {
  const Agent& me = ctx.self();
  if (me.done) return;
  Agent& nx = ctx.mut();
  MpSlot& s = nx.mp;
  if (s.step == 0) {
    fold_inbox(s, alg_);
    begin_round(s, alg_, ctx.degree());
  }
  const Schedule& plan = schedules_.at(me.id);
  if (!me.at_home) {
    // Standing at a neighbor: swap what each side holds for the other.
    const Agent* host = nullptr;
    for (const Agent* a : ctx.here())
      if (a->id != me.id && a->at_home) {
        if (host) throw SimulationFault("mp: two agents settled at one node");
        host = a;
      }
    if (host) {
      const Port out = plan[static_cast<std::size_t>(s.step - 1)].port;
      const Port in = me.arrival_port;
      const MpSlot& hs = host->mp;
      if (hs.outbox[in - 1] && !hs.delivered[in - 1]) s.inbox[out - 1] = hs.outbox[in - 1];
      std::optional<long> give;
      if (s.outbox[out - 1] && !s.delivered[out - 1]) {
        give = s.outbox[out - 1];
        s.delivered[out - 1] = true;
      }
      ctx.write(host->id, [in, give](Agent& a) {
        if (a.mp.outbox[in - 1]) a.mp.delivered[in - 1] = true;
        if (give) a.mp.inbox[in - 1] = give;
      });
      ctx.emit("exchange", "port=" + std::to_string(out));
    }
  }
  const ScheduleStep& act = plan[static_cast<std::size_t>(s.step)];
  if (act.kind == ScheduleStep::Kind::visit) {
    nx.at_home = false;
    ctx.move(act.port);
  } else if (act.kind == ScheduleStep::Kind::back) {
    nx.at_home = true;
    ctx.move(me.arrival_port);
  }
  if (++s.step == length_) {
    s.step = 0;
    s.pending = true;
    if (++s.round == alg_.rounds) nx.done = true;
  }
}

namespace {

std::vector<MpState> node_states(const World& w, const MpAlgorithm& alg) {
  std::vector<MpState> out(static_cast<std::size_t>(w.graph().node_count()));
  for (int k = 0; k < w.size(); ++k) out[w.positions()[k]] = settled_state(w.agents()[k], alg);
  return out;
}

}  // namespace

MpReport simulate_mp(World& w, const MpAlgorithm& alg, const MpConfig& cfg, long max_rounds) {
  auto occ = w.occupancy();
  if (std::any_of(occ.begin(), occ.end(), [](int c) { return c != 1; }))
    throw std::invalid_argument("simulate_mp needs a dispersed configuration");
  MpReport rep;
  for (int k = 0; k < w.size(); ++k) rep.node_ids.push_back(0);
  for (int k = 0; k < w.size(); ++k) rep.node_ids[w.positions()[k]] = w.agents()[k].id;
  rep.round_length = mp_round_length(cfg);
  MpProgram prog(alg, cfg);
  std::vector<MpState> initial(occ.size());
  for (int k = 0; k < w.size(); ++k) {
    const NodeId v = w.positions()[k];
    initial[v] = alg.init(w.agents()[k].id, w.graph().degree(v));
  }
  rep.states.push_back(std::move(initial));
  const long start = w.round();
  auto hook = [&](const World& world) {
    if ((world.round() - start) % rep.round_length == 0) rep.states.push_back(node_states(world, alg));
  };
  rep.run = run(w, prog, std::max(max_rounds, 1L), rep.round_length > 0 ? hook : StepHook{});
  if (rep.round_length == 0) {
    // A lone node hears nothing, so its rounds need no movement.
    for (long t = 0; t < alg.rounds; ++t) {
      for (Agent& a : w.agents_mut()) {
        begin_round(a.mp, alg, 0);
        a.mp.pending = true;
        ++a.mp.round;
        fold_inbox(a.mp, alg);
      }
      rep.states.push_back(node_states(w, alg));
    }
  }
  rep.sim_rounds = rep.run.rounds;
  if (rep.run.termination == Termination::completed)
    for (Agent& a : w.agents_mut()) fold_inbox(a.mp, alg);
  return rep;
}

MpReport simulate_mp_from_any_config(World& w, const MpAlgorithm& alg, const MpConfig& cfg, long max_rounds) {
  RunReport election = elect_leader(w, max_rounds);
  if (election.termination != Termination::completed || election.rounds >= max_rounds) {
    MpReport rep;
    rep.election = election;
    rep.run = election;
    rep.run.termination = Termination::max_rounds_exceeded;
    return rep;
  }
  MpReport rep = simulate_mp(w, alg, cfg, max_rounds - election.rounds);
  rep.election = election;
  rep.run.rounds += election.rounds;
  return rep;
}

}  // namespace agentnet
