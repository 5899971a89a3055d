#pragma once

#include "agentnet/runtime.hpp"

namespace agentnet {

// Programs run after election by a dispersed world. The leader is the only
// agent that decides; everyone else stays settled or rides with the leader.
class CourierProgram : public Program {
 public:
  void start(World& w) override;
  void step(StepContext& ctx) override;
  bool finished(const World& w) const override;

 protected:
  virtual void lead(StepContext& ctx) = 0;
  // Extra behavior of non-leaders; returning true skips riding and settling.
  virtual bool member_step(StepContext&) { return false; }

  // One round of numbering the leader's traversal tree in first-visit order.
  // With `collect`, each numbered agent joins the group as the walk leaves it.
  // Returns true once the walk is back at the root.
  bool rank_step(StepContext& ctx, bool collect);
  // One hop toward the node of rank `target` along the traversal tree, given
  // the tree info of the current node. Returns true when already there.
  static bool route_step(StepContext& ctx, const TreeInfo& here, int target);

  AgentId leader_ = 0;
};

// The settled agent at the courier's node, or the courier itself when the
// node is empty (which happens only at its own home).
const Agent& settled_host(StepContext& ctx);
// Applies `fn` to `host` next round, whether it is the courier or another agent.
void edit(StepContext& ctx, const Agent& host, const std::function<void(Agent&)>& fn);

}  // namespace agentnet
