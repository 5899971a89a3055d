#pragma once

#include <functional>

#include "agentnet/courier.hpp"

namespace agentnet {

// Token-driven Boruvka-style merging over the leader's numbered traversal tree.
// The leader carries the token; the holder is the settled agent it stands with.
class MstProgram : public CourierProgram {
 protected:
  void lead(StepContext& ctx) override;

 private:
  void pass_token(StepContext& ctx);
  void walk_component(StepContext& ctx, const Agent& host);
  void begin_merge(StepContext& ctx, const Agent& host);
  void step_reverse(StepContext& ctx, const Agent& host);
  void step_relabel(StepContext& ctx, const Agent& host);
};

enum class MstEvent { phase_start, merge_done };

struct MstReport {
  RunReport run;
  RunReport election;  // zero rounds when a leader already existed
  long rank_rounds = 0;
  int phases = 0;
  std::vector<int> components;  // component count at the start of each phase
  std::vector<Edge> edges;      // from the agents' parent ports, u < v
  Rational total;
};

// Reads MST edges off parent ports; oracle-side node labels.
std::vector<Edge> mst_edges(const World& w);

using MstObserver = std::function<void(const World&, MstEvent)>;

// Elects a leader first if none exists.
MstReport run_mst(World& w, long max_rounds, const MstObserver& observe = {});

}  // namespace agentnet
