#include <doctest.h>

#include <sstream>

#include "agentnet/election.hpp"
#include "agentnet/oracles.hpp"
#include "agentnet/runtime.hpp"

using namespace agentnet;

namespace {

// Walks one agent around a ring, leaving each node by the port it did not enter by.
class RingWalk : public Program {
 public:
  explicit RingWalk(int laps_len) : len_(laps_len) {}
  void start(World& w) override {
    for (auto& a : w.agents_mut()) a.done = a.id != 1;
  }
  void step(StepContext& ctx) override {
    if (ctx.self().done) return;
    const Port in = ctx.self().arrival_port;
    ctx.move(in == 1 ? 2 : 1);
    if (++moves_ == len_) ctx.mut().done = true;
  }

 private:
  int len_;
  int moves_ = 0;
};

// Each agent counts the co-located agents it sees as candidates.
class CountPeers : public Program {
 public:
  void step(StepContext& ctx) override {
    int seen = 0;
    for (const Agent* a : ctx.here())
      if (a->id != ctx.self().id && a->status == Status::candidate) ++seen;
    ctx.mut().dom_count = seen;
    ctx.mut().done = true;
  }
};

class OneMove : public Program {
 public:
  void step(StepContext& ctx) override {
    if (ctx.self().id == 1) ctx.move(2);
    ctx.mut().done = true;
  }
};

}  // namespace

TEST_CASE("dispersed and rooted placements") {
  PortGraph g = generate_graph(GraphKind::path, 4, 0, 1);
  World d = init_world(g, Placement::dispersed());
  CHECK(d.size() == 4);
  CHECK(d.occupancy() == std::vector<int>{1, 1, 1, 1});
  for (const auto& a : d.agents()) CHECK(a.init_alone);
  World r = init_world(g, Placement::rooted(0));
  CHECK(r.occupancy() == std::vector<int>{4, 0, 0, 0});
  for (const auto& a : r.agents()) CHECK_FALSE(a.init_alone);
}

TEST_CASE("general placement is deterministic and ids are unique") {
  PortGraph g = generate_graph(GraphKind::random_connected, 12, 6, 3);
  for (std::uint64_t s = 1; s <= 20; ++s) {
    World a = init_world(g, Placement::general(s), {IdPolicy::Kind::seeded_permutation, s});
    World b = init_world(g, Placement::general(s), {IdPolicy::Kind::seeded_permutation, s});
    CHECK(a.positions() == b.positions());
    CHECK(a.agents() == b.agents());
    std::vector<int> ids;
    for (const auto& x : a.agents()) ids.push_back(x.id);
    std::sort(ids.begin(), ids.end());
    for (int i = 0; i < 12; ++i) CHECK(ids[i] == i + 1);
    int total = 0;
    for (int c : a.occupancy()) total += c;
    CHECK(total == 12);
  }
}

TEST_CASE("a move lands at the neighbor with the reverse port known") {
  PortGraph g = parse_graph_text("4 3\n0 1 1 3 1\n1 2 1 1 2\n1 3 2 1 3\n");
  World w = init_world(g, Placement::explicit_map({1, 0, 2, 3}));
  OneMove prog;
  run(w, prog, 10);
  CHECK(w.position_of(1) == 3);
  CHECK(w.agents()[w.index_of(1)].arrival_port == 1);
}

TEST_CASE("co-located agents read each other in the same round") {
  World w = init_world(generate_graph(GraphKind::path, 2, 0, 1), Placement::rooted(0));
  CountPeers prog;
  RunReport rep = run(w, prog, 5);
  CHECK(rep.rounds == 1);
  for (const auto& a : w.agents()) CHECK(a.dom_count == 1);
}

TEST_CASE("an idle program ends at round zero with baseline memory") {
  World w = init_world(generate_graph(GraphKind::ring, 5, 0, 1), Placement::dispersed());
  IdleProgram idle;
  RunReport rep = run(w, idle, 10);
  CHECK(rep.rounds == 0);
  for (int k = 0; k < w.size(); ++k) CHECK(rep.peak_bits[k] == memory_bits(w.agents()[k], w.widths()));
}

TEST_CASE("walking a ring once takes n rounds") {
  for (int n : {3, 5, 8}) {
    World w = init_world(generate_graph(GraphKind::ring, n, 0, 2), Placement::dispersed());
    const NodeId home = w.position_of(1);
    RingWalk prog(n);
    RunReport rep = run(w, prog, 100);
    CHECK(rep.rounds == n);
    CHECK(w.position_of(1) == home);
  }
}

TEST_CASE("the round budget is enforced") {
  World w = init_world(generate_graph(GraphKind::ring, 6, 0, 2), Placement::dispersed());
  RingWalk prog(100);
  RunReport rep = run(w, prog, 7);
  CHECK(rep.termination == Termination::max_rounds_exceeded);
  CHECK(rep.rounds == 7);
  CHECK_THROWS_AS(run(w, prog, 0), std::invalid_argument);
}

TEST_CASE("memory is additive in held records") {
  World w = init_world(generate_graph(GraphKind::path, 8, 0, 1), Placement::dispersed());
  Agent a = w.agents()[0];
  const long base = memory_bits(a, w.widths());
  CHECK(base >= w.widths().id + 2 + 2);
  a.records.push_back({});
  const long one = memory_bits(a, w.widths()) - base;
  CHECK(one > 0);
  for (int k = 2; k <= 5; ++k) {
    a.records.push_back({});
    CHECK(memory_bits(a, w.widths()) == base + k * one);
  }
}

TEST_CASE("identical runs produce identical traces") {
  auto traced = [] {
    std::ostringstream out;
    TraceSink sink(out, 2);
    World w = init_world(generate_graph(GraphKind::random_connected, 10, 5, 4), Placement::general(4),
                         {IdPolicy::Kind::seeded_permutation, 4});
    w.set_trace(&sink);
    elect_leader(w, 5000);
    return out.str();
  };
  const std::string a = traced();
  CHECK(!a.empty());
  CHECK(a == traced());
}

TEST_CASE("every agent is on a node and occupancy matches positions after each round") {
  World w = init_world(generate_graph(GraphKind::random_connected, 14, 8, 9), Placement::general(9),
                       {IdPolicy::Kind::seeded_permutation, 9});
  ElectionProgram prog;
  bool consistent = true;
  std::vector<bool> alone;
  for (const auto& a : w.agents()) alone.push_back(a.init_alone);
  run(w, prog, 10000, [&](const World& world) {
    std::vector<int> occ(static_cast<std::size_t>(world.graph().node_count()), 0);
    for (NodeId v : world.positions()) {
      consistent = consistent && v >= 0 && v < world.graph().node_count();
      ++occ[v];
    }
    consistent = consistent && occ == world.occupancy();
    for (int k = 0; k < world.size(); ++k) consistent = consistent && world.agents()[k].init_alone == alone[k];
  });
  CHECK(consistent);
}
