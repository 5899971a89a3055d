#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agentnet/padding.hpp"
#include "agentnet/runtime.hpp"

namespace agentnet {

using Messages = std::vector<std::optional<long>>;  // by port, index port-1

// A deterministic synchronous message-passing algorithm. Each round every node
// sends from its current state, then folds the messages it received into it.
struct MpAlgorithm {
  std::string name;
  long rounds = 0;
  std::function<MpState(AgentId id, int degree)> init;
  std::function<Messages(const MpState&, int degree)> send;
  std::function<MpState(const MpState&, const Messages& inbox)> receive;
};

// flood: value 1 once reached from `source`.
MpAlgorithm flood_algorithm(AgentId source, long rounds);
// bfs_label: value is the hop distance from `root`, -1 while unknown.
MpAlgorithm bfs_label_algorithm(AgentId root, long rounds);
// max_id_leader: value is the largest id heard, aux the node's own id; the
// leader is the node with value == aux.
MpAlgorithm max_id_leader_algorithm(long rounds);
// By name; `source` is used by flood and bfs_label.
MpAlgorithm mp_algorithm(const std::string& name, AgentId source, long rounds);

struct MpConfig {
  int n = 0;
  int max_degree = 0;
  double c = 2.0;
};

// Rounds of one simulated round: 2 * max_degree per id bit.
long mp_round_length(const MpConfig& cfg);

class MpProgram : public Program {
 public:
  MpProgram(MpAlgorithm alg, MpConfig cfg) : alg_(std::move(alg)), cfg_(cfg) {}
  void start(World& w) override;
  void step(StepContext& ctx) override;

 private:
  MpAlgorithm alg_;
  MpConfig cfg_;
  long length_ = 0;
  std::map<AgentId, Schedule> schedules_;  // each derived from the agent's own id
};

// State after the latest completed simulated round, folding in a pending inbox.
MpState settled_state(const Agent& a, const MpAlgorithm& alg);

struct MpReport {
  RunReport run;       // includes election rounds when any
  RunReport election;  // zero rounds for a dispersed start
  long sim_rounds = 0;
  long round_length = 0;
  std::vector<std::vector<MpState>> states;  // [t][node] for t = 0..rounds
  std::vector<AgentId> node_ids;             // id of the agent settled at each node
};

// Requires a dispersed world; throws SimulationFault on an undelivered message.
MpReport simulate_mp(World& w, const MpAlgorithm& alg, const MpConfig& cfg, long max_rounds);
// Elects a leader first, which leaves the agents dispersed.
MpReport simulate_mp_from_any_config(World& w, const MpAlgorithm& alg, const MpConfig& cfg, long max_rounds);

}  // namespace agentnet
