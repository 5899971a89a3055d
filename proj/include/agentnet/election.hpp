#pragma once

#include "agentnet/runtime.hpp"

namespace agentnet {

#ifndef AGENTNET_SMALLER_HEAD_SETTLES
inline constexpr bool kLargerHeadSettles = true;
#else
inline constexpr bool kLargerHeadSettles = false;
#endif

struct ElectionOptions {
  // When two traversal heads confirm the same empty node together, the one with
  // the larger id places an agent there; flip to let the smaller one do it.
  bool larger_head_settles = kLargerHeadSettles;
};

// Singleton, multiplicity and global phases as one per-agent state machine.
class ElectionProgram : public Program {
 public:
  explicit ElectionProgram(ElectionOptions opt = {}) : opt_(opt) {}
  void start(World& w) override;
  void step(StepContext& ctx) override;

 private:
  ElectionOptions opt_;
  void step_singleton(StepContext& ctx);
  void step_inform(StepContext& ctx);
  void step_follower(StepContext& ctx);
  void step_traversal(StepContext& ctx);
  void step_claim(StepContext& ctx);
  void step_retreat(StepContext& ctx);
};

RunReport elect_leader(World& w, long max_rounds, ElectionOptions opt = {});

// Key ordering global traversals: later promotion wins, then larger id.
struct TraversalKey {
  long stamp = 0;
  AgentId id = 0;
  auto operator<=>(const TraversalKey&) const = default;
};

}  // namespace agentnet
