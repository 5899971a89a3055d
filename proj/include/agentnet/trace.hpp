#pragma once

#include <ostream>
#include <string>
#include <string_view>

namespace agentnet {

// Level 0: moves and protocol actions. Level 1: adds buffered writes.
// Level 2: adds one snapshot record per agent per round.
class TraceSink {
 public:
  TraceSink(std::ostream& out, int level) : out_(&out), level_(level) {}
  int level() const { return level_; }
  void event(long round, int agent, int node, std::string_view action, std::string_view detail) {
    *out_ << "round=" << round << " agent=" << agent << " node=" << node << " action=" << action;
    if (!detail.empty()) *out_ << ' ' << detail;
    *out_ << '\n';
  }

 private:
  std::ostream* out_;
  int level_;
};

}  // namespace agentnet
