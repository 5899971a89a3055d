#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "agentnet/graph.hpp"

namespace agentnet {

using AgentId = int;

enum class Status : std::uint8_t { candidate, non_candidate, local_leader, leader };
enum class Origin : std::uint8_t { singleton, multiplicity };

const char* to_string(Status s);

enum class DfsKind : std::uint8_t { multiplicity, global };

// Traversal bookkeeping left on the agent that owns a visited node.
// Global traversals are ordered by (stamp, owner); multiplicity ones carry stamp 0.
struct DfsRecord {
  DfsKind kind = DfsKind::multiplicity;
  long stamp = 0;
  AgentId owner = 0;
  Port parent = 0;  // 0 only at the traversal root
  Port next = 1;    // ports below `next` (other than parent) are explored
  bool operator==(const DfsRecord&) const = default;
};

enum class NoteKind : std::uint8_t { confirmed, waiting };

// Held by an agent adjacent to an absent local leader's home; `port` leads there.
struct HomeNote {
  AgentId leader = 0;
  long stamp = 0;
  Port port = 0;
  NoteKind kind = NoteKind::confirmed;
  bool operator==(const HomeNote&) const = default;
};

enum class ElMode : std::uint8_t {
  idle,         // stationary; done once status is terminal and at home
  sweep,        // singleton: initial neighbor sweep
  padding,      // singleton: padded-id exploration
  probe,        // singleton: re-probing unmet larger-degree neighbors
  inform,       // singleton local leader: inform sweep and home note
  follower,     // group member copying its head
  head,         // group head running the multiplicity traversal
  claim_trip,   // head alone, visiting the DFS parent to register its claim
  waiting,      // head alone, parked at the DFS parent until its owner returns
  claim_back,   // head alone, returning to the claimed node
  global,       // local leader running the global traversal
  retreat,      // stopped global runner walking back home
};

enum class Verdict : std::uint8_t { none, truly_empty, home_confirmed, home_waiting };

// Arrive, wait, sweep neighbors, wait again: shared by both traversal kinds.
enum class Probe : std::uint8_t { arrived, waited, at_neighbor, returned, back_waited, wait_owner };

struct ElectionState {
  ElMode mode = ElMode::idle;
  int home_degree = 0;
  long counter = 0;  // schedule offset; tree depth while traversing globally
  Port cursor = 0;   // last port probed in the current probe cycle
  Port away = 0;     // home port taken by the current visit, 0 while home
  int min_nbr_degree = 0;
  int max_nbr_degree = 0;
  std::vector<bool> equal_nbr;  // ports whose far end has our degree
  std::vector<bool> met;        // ports whose far end hosts a met singleton
  bool padded = false;
  bool demote = false;
  long stamp = 0;  // promotion round
  AgentId head = 0;  // followers only
  // traversal head
  Port came_via = 0;
  bool forward = false;
  Probe probe = Probe::arrived;
  Port confirm_port = 0;
  Verdict verdict = Verdict::none;
  long verdict_stamp = 0;
  AgentId verdict_leader = 0;
  AgentId settle_pick = 0;  // follower told to settle this round
  bool note_placed = false;
  bool operator==(const ElectionState&) const = default;
};

enum class Mark : std::uint8_t { undecided, in_set, out_of_set };

struct ChildRange {
  Port port = 0;
  int first_rank = 0;
  bool operator==(const ChildRange&) const = default;
};

// Position in the leader's traversal tree, shared by MST and the applications.
// Ranks are first-visit order, so a subtree holds ranks [rank, subtree_end].
struct TreeInfo {
  int rank = 0;  // 0 while unassigned
  Port parent = 0;
  int parent_rank = 0;
  std::vector<ChildRange> children;  // ascending first_rank
  int subtree_end = 0;
  bool operator==(const TreeInfo&) const = default;
};

// Membership of this node in the MST forest. The member whose rank equals
// `rank` is the root of its component tree.
struct Component {
  int rank = 0;
  Port parent = 0;
  std::vector<Port> children;  // ascending
  std::vector<bool> rejected;  // ports known to lead back into the component
  bool operator==(const Component&) const = default;
};

enum class Task : std::uint8_t {
  none,
  rank_walk,  // numbering the traversal tree
  hold,       // token held by the agent of rank `token`
  route,      // carrying the token to rank `target`
  scan,       // walking the component tree for its minimum outgoing edge
  seek,       // walking the component tree to the edge's inner endpoint
  reverse,    // flipping parent pointers up to the old component root
  rewind,     // walking back down to the new component root
  relabel,    // writing the merged component rank
  attach,     // registering the new child across the merge edge
  disperse,   // carrying the group back out in rank order
  settle,     // waiting while a settler probes its neighbors
  greedy,     // dominating-set selection pass
  prune,      // dominating-set minimality pass
  done,
};

// Working state of the leader, which carries the token and does all walking.
struct Courier {
  Task task = Task::none;
  int phase = 0;
  int counter = 0;  // ranks assigned so far
  int at_rank = 0;  // rank of the current node
  int carry = 0;    // rank of the child just left
  int token = 0;
  int target = 0;
  int anchor = 0;  // rank where the current tree walk started
  int comp = 0;    // component rank of the token holder
  int new_rank = 0;
  int stage = 0;  // sub-step of the per-node work in a selection pass
  Port cursor = 0;
  Port probe_port = 0;
  Port new_parent = 0;  // 0: the port we arrived through
  bool probing = false;
  bool fresh = false;      // first visit of the current node in this walk
  bool ascending = false;  // just came up from a child
  bool reject_pending = false;
  bool attach_after = false;
  bool found = false;
  Rational best;
  int best_member = 0;
  Port best_port = 0;
  int best_other = 0;
  AgentId pick = 0;  // agent told to join the group this round
  bool operator==(const Courier&) const = default;
};

// Node state of a simulated message-passing algorithm.
struct MpState {
  long value = 0;
  long aux = 0;
  bool operator==(const MpState&) const = default;
};

struct MpSlot {
  MpState state;
  long round = 0;  // simulated rounds completed
  long step = 0;   // position in the meeting schedule
  std::vector<std::optional<long>> outbox;  // by port
  std::vector<bool> delivered;
  std::vector<std::optional<long>> inbox;  // by port
  bool pending = false;  // inbox of the last completed round not yet folded in
  bool operator==(const MpSlot&) const = default;
};

struct Agent {
  AgentId id = 0;
  Status status = Status::candidate;
  Origin origin = Origin::singleton;
  bool init_alone = false;
  bool all_edges_visited = false;
  bool at_home = false;
  bool done = false;
  Port arrival_port = 0;  // set by the runtime on each move, 0 after a stay
  ElectionState el;
  std::vector<DfsRecord> records;
  std::vector<HomeNote> notes;
  TreeInfo tree;
  Component comp;
  Courier courier;
  bool riding = false;  // moves with the leader
  Mark mark = Mark::undecided;
  int dom_count = 0;  // in_set nodes in the closed neighborhood
  MpSlot mp;           // excluded from the memory ledger
  bool operator==(const Agent&) const = default;
};

}  // namespace agentnet
