#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agentnet/agent.hpp"
#include "agentnet/graph.hpp"
#include "agentnet/trace.hpp"

namespace agentnet {

class SimulationFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Placement {
  enum class Kind { dispersed, rooted, general, explicit_map };
  Kind kind = Kind::dispersed;
  NodeId node = 0;
  std::uint64_t seed = 0;
  std::vector<NodeId> map;  // agent index -> node

  static Placement dispersed() { return {}; }
  static Placement rooted(NodeId v) { return {Kind::rooted, v, 0, {}}; }
  static Placement general(std::uint64_t s) { return {Kind::general, 0, s, {}}; }
  static Placement explicit_map(std::vector<NodeId> m) { return {Kind::explicit_map, 0, 0, std::move(m)}; }
};

struct IdPolicy {
  enum class Kind { sequential, seeded_permutation };
  Kind kind = Kind::sequential;
  std::uint64_t seed = 0;
};

// Declared field widths for the memory ledger.
struct Widths {
  int id = 1;     // agent ids and ranks
  int port = 1;   // port numbers including the "none" value
  int stamp = 1;  // round stamps bounded by the run budget
  int degree = 1;
};

int bits_for(long max_value);  // width holding 0..max_value, at least 1

class World;

// Per-agent view for one round. Reads see the pre-round snapshot; every
// effect is buffered until all agents have stepped.
class StepContext {
 public:
  long round() const;
  const Agent& self() const;
  Agent& mut();
  std::span<const Agent* const> here() const;  // co-located agents by ascending id, self included
  int degree() const;
  const Rational& weight(Port p) const;
  const Widths& widths() const;
  int agent_count() const;
  void move(Port p);
  bool moving() const { return move_ != 0; }
  void write(AgentId target, std::function<void(Agent&)> fn);
  void emit(std::string_view action, const std::string& detail = {});
  // Effects decided this round by another co-located agent, evaluating its
  // deterministic transition first if needed. Dependency cycles fault.
  const Agent& peer_next(AgentId peer) const;
  Port peer_move(AgentId peer) const;

 private:
  friend class World;
  World* world_ = nullptr;
  int index_ = 0;
  Port move_ = 0;
  bool mutated_ = false;
};

class Program {
 public:
  virtual ~Program() = default;
  virtual void start(World&) {}
  virtual void step(StepContext& ctx) = 0;
  virtual bool finished(const World& w) const;  // default: every agent done
};

enum class Termination { completed, max_rounds_exceeded };
const char* to_string(Termination t);

struct RunReport {
  long rounds = 0;  // rounds used by this run
  Termination termination = Termination::completed;
  std::vector<long> peak_bits;  // per agent, by ascending id
  std::vector<Status> statuses;
  std::optional<AgentId> leader;
};

class World {
 public:
  World(std::shared_ptr<const PortGraph> g, std::vector<AgentId> ids, std::vector<NodeId> positions);

  const PortGraph& graph() const { return *graph_; }
  std::shared_ptr<const PortGraph> graph_ptr() const { return graph_; }
  long round() const { return round_; }
  int size() const { return static_cast<int>(agents_.size()); }
  const std::vector<Agent>& agents() const { return agents_; }
  std::vector<Agent>& agents_mut() { return agents_; }
  const std::vector<NodeId>& positions() const { return pos_; }
  NodeId position_of(AgentId id) const { return pos_[index_of(id)]; }
  int index_of(AgentId id) const;
  AgentId max_id() const { return max_id_; }
  std::vector<int> occupancy() const;
  const Widths& widths() const { return widths_; }
  void set_round_budget(long max_rounds);
  const std::vector<long>& peak_bits() const { return peak_; }
  void refresh_memory();  // re-sample every agent after out-of-band setup

  void set_trace(TraceSink* sink) { trace_ = sink; }
  TraceSink* trace() const { return trace_; }

  void step(Program& program);

 private:
  friend class StepContext;
  void compute(int k);
  int settle_peer(int self, AgentId peer);
  struct Write {
    int target;
    std::function<void(Agent&)> fn;
  };
  std::shared_ptr<const PortGraph> graph_;
  std::vector<Agent> agents_;
  std::vector<NodeId> pos_;
  std::vector<int> index_by_id_;
  AgentId max_id_ = 0;
  long round_ = 0;
  Widths widths_;
  std::vector<long> peak_;
  TraceSink* trace_ = nullptr;
  // per-round scratch
  std::vector<Agent> next_;
  std::vector<char> mutated_;
  std::vector<Port> moves_;
  std::vector<char> state_;  // 0 pending, 1 running, 2 computed
  Program* program_ = nullptr;
  std::vector<std::vector<Write>> writes_;
  std::vector<std::vector<const Agent*>> at_node_;
  std::vector<int> touched_nodes_;
};

World init_world(std::shared_ptr<const PortGraph> g, const Placement& placement, const IdPolicy& ids = {});
World init_world(const PortGraph& g, const Placement& placement, const IdPolicy& ids = {});

using StepHook = std::function<void(const World&)>;
RunReport run(World& w, Program& program, long max_rounds, const StepHook& after_step = {});

long memory_bits(const Agent& a, const Widths& widths);

// Program that does nothing and is finished immediately.
class IdleProgram : public Program {
 public:
  void start(World& w) override;
  void step(StepContext&) override {}
};

}  // namespace agentnet
