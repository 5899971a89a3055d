#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agentnet/graph.hpp"

namespace agentnet {

std::string binary_of(long id);  // minimal-length encoding, leading bit 1

// Original id bits followed by "10" repeated b*b times.
struct PaddedId {
  int original_bits = 0;
  std::string bits;
};

PaddedId pad_id(const std::string& id_bits);
long padded_length(int b);  // b + 2b^2

// One round of a neighbor schedule. Visits go out through `port`; the next
// step is always the matching return.
struct ScheduleStep {
  enum class Kind { stay, visit, back };
  Kind kind = Kind::stay;
  Port port = 0;
  bool operator==(const ScheduleStep&) const = default;
};

using Schedule = std::vector<ScheduleStep>;

// Sweep block for a '1' bit: visit ports 1..degree in order, returning after each,
// then stay until the block is `block_len` rounds long.
void append_block(Schedule& s, char bit, int degree, int block_len);

// Blocks of exactly 2*degree rounds, one per padded bit.
Schedule exploration_schedule(const PaddedId& p, int degree);

// Left-zero-padded to ceil(c*log2 n) bits; sweeps padded to 2*max_degree rounds.
int meeting_bits(int n, double c);
std::string meeting_bit_string(long id, int n, double c);
Schedule meeting_schedule(long id, int n, int max_degree, int degree, double c = 2.0);

// Two agents on adjacent nodes run their schedules in lockstep from round 0;
// `port_a` at a's node and `port_b` at b's node are the shared edge. Agents stay
// home once their schedule runs out. Returns the first round boundary at which
// they share a node, searching up to `horizon` rounds.
std::optional<long> first_meeting(const Schedule& a, const Schedule& b, Port port_a, Port port_b, long horizon);

}  // namespace agentnet
