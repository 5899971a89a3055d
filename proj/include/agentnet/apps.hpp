#pragma once

#include "agentnet/courier.hpp"

namespace agentnet {

enum class AppKind { gather, mis, mds };

// Gathering collects every agent on the way back up the numbered tree.
// MIS and MDS then carry the group back out in rank order, one settler per
// node, and select nodes with the leader's help.
class AppProgram : public CourierProgram {
 public:
  explicit AppProgram(AppKind kind) : kind_(kind) {}

 protected:
  void lead(StepContext& ctx) override;
  bool member_step(StepContext& ctx) override;

 private:
  AppKind kind_;
  void next_target(StepContext& ctx);
  void sweep_step(StepContext& ctx, const Agent& host);
};

struct AppReport {
  RunReport run;
  RunReport election;  // zero rounds when a leader already existed
  long app_rounds = 0;
  std::optional<NodeId> gather_node;
  std::vector<NodeId> set;  // in_set nodes, ascending labels
};

AppReport gather(World& w, long max_rounds);
AppReport compute_mis(World& w, long max_rounds);
AppReport compute_mds(World& w, long max_rounds);
AppReport run_app(World& w, AppKind kind, long max_rounds);

// Nodes whose settled agent is marked in_set; oracle-side labels.
std::vector<NodeId> selected_nodes(const World& w);

}  // namespace agentnet
