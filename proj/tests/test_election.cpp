#include <doctest.h>

#include <map>
#include <set>

#include "agentnet/election.hpp"
#include "agentnet/oracles.hpp"

using namespace agentnet;

namespace {

// Every status an agent held during the run, in order of first appearance.
struct History {
  std::map<AgentId, std::vector<Status>> seen;
  void record(const World& w) {
    for (const auto& a : w.agents()) {
      auto& v = seen[a.id];
      if (v.empty() || v.back() != a.status) v.push_back(a.status);
    }
  }
  bool ever(AgentId id, Status s) const {
    const auto& v = seen.at(id);
    return std::find(v.begin(), v.end(), s) != v.end();
  }
};

History run_history(World& w, long budget = 100000) {
  History h;
  h.record(w);
  ElectionProgram prog;
  RunReport rep = run(w, prog, budget, [&h](const World& world) { h.record(world); });
  REQUIRE(rep.termination == Termination::completed);
  return h;
}

bool allowed(Status from, Status to) {
  switch (from) {
    case Status::candidate: return to == Status::local_leader || to == Status::non_candidate;
    case Status::local_leader: return to == Status::leader || to == Status::non_candidate;
    default: return false;
  }
}

AgentId agent_at(const World& w, NodeId v) {
  for (int k = 0; k < w.size(); ++k)
    if (w.positions()[k] == v) return w.agents()[k].id;
  return 0;
}

}  // namespace

TEST_CASE("a lone agent is leader at once") {
  World w = init_world(generate_graph(GraphKind::path, 1, 0, 1), Placement::dispersed());
  RunReport rep = elect_leader(w, 10);
  CHECK(rep.leader == 1);
  CHECK(rep.rounds <= 3);
}

TEST_CASE("path leaves facing an occupied degree-2 neighbor become local leaders") {
  World w = init_world(generate_graph(GraphKind::path, 4, 0, 1), Placement::dispersed());
  std::vector<AgentId> leaves;
  for (NodeId v = 0; v < 4; ++v)
    if (w.graph().degree(v) == 1) leaves.push_back(agent_at(w, v));
  History h = run_history(w);
  for (AgentId id : leaves) CHECK(h.ever(id, Status::local_leader));
}

TEST_CASE("on a star every leaf is a local leader and the latest, then largest, stamp wins") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    World w = init_world(generate_graph(GraphKind::star, 5, 0, s), Placement::dispersed(),
                         {IdPolicy::Kind::seeded_permutation, s});
    NodeId center = 0;
    for (NodeId v = 0; v < 5; ++v)
      if (w.graph().degree(v) == 4) center = v;
    const AgentId hub = agent_at(w, center);
    std::map<AgentId, long> stamp;
    History h;
    ElectionProgram prog;
    run(w, prog, 100000, [&](const World& world) {
      h.record(world);
      for (const auto& a : world.agents())
        if (a.status == Status::local_leader) stamp[a.id] = a.el.stamp;
    });
    CAPTURE(s);
    for (const auto& a : w.agents()) {
      if (a.id == hub) CHECK_FALSE(h.ever(a.id, Status::local_leader));
      else CHECK(h.ever(a.id, Status::local_leader));
    }
    REQUIRE(validate_leader(w).pass);
    auto best = std::max_element(stamp.begin(), stamp.end(), [](const auto& x, const auto& y) {
      return std::pair(x.second, x.first) < std::pair(y.second, y.first);
    });
    for (const auto& a : w.agents())
      if (a.status == Status::leader) CHECK(a.id == best->first);
  }
}

TEST_CASE("on an equal-degree ring some agent becomes a local leader for every id assignment") {
  std::vector<AgentId> ids{1, 2, 3, 4};
  do {
    World w(std::make_shared<const PortGraph>(generate_graph(GraphKind::ring, 4, 0, 5)), ids, {0, 1, 2, 3});
    History h = run_history(w);
    int local = 0;
    for (AgentId id : ids) local += h.ever(id, Status::local_leader);
    CHECK(local >= 1);
    CHECK(validate_leader(w).pass);
  } while (std::next_permutation(ids.begin(), ids.end()));
}

TEST_CASE("rooted starts elect the minimum id") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    World w = init_world(generate_graph(GraphKind::ring, 6, 0, s), Placement::rooted(static_cast<NodeId>(s % 6)),
                         {IdPolicy::Kind::seeded_permutation, s});
    RunReport rep = elect_leader(w, 100000);
    CHECK(rep.leader == 1);
    CHECK(validate_dispersion(w).pass);
  }
  World p = init_world(generate_graph(GraphKind::path, 4, 0, 1), Placement::rooted(0));
  History h = run_history(p);
  CHECK(h.ever(1, Status::local_leader));
}

TEST_CASE("two multiplicity groups yield at least two local leaders") {
  PortGraph g = generate_graph(GraphKind::path, 6, 0, 1);
  // Three agents on each end of the path.
  std::vector<NodeId> ends;
  for (NodeId v = 0; v < 6; ++v)
    if (g.degree(v) == 1) ends.push_back(v);
  World w = init_world(g, Placement::explicit_map({ends[0], ends[0], ends[0], ends[1], ends[1], ends[1]}));
  History h = run_history(w);
  int local = 0;
  for (const auto& a : w.agents()) local += h.ever(a.id, Status::local_leader);
  CHECK(local >= 2);
}

TEST_CASE("status changes follow the allowed transitions and end terminal") {
  for (GraphKind kind : {GraphKind::path, GraphKind::ring, GraphKind::star, GraphKind::random_connected})
    for (std::uint64_t s = 1; s <= 6; ++s)
      for (int pl = 0; pl < 3; ++pl) {
        const int n = 12;
        PortGraph g = generate_graph(kind, n, kind == GraphKind::random_connected ? 6 : 0, s);
        Placement P = pl == 0 ? Placement::dispersed() : pl == 1 ? Placement::rooted(0) : Placement::general(s);
        World w = init_world(g, P, {IdPolicy::Kind::seeded_permutation, s});
        History h = run_history(w);
        for (const auto& [id, seq] : h.seen) {
          for (std::size_t i = 1; i < seq.size(); ++i) CHECK(allowed(seq[i - 1], seq[i]));
          CHECK((seq.back() == Status::leader || seq.back() == Status::non_candidate));
        }
        CHECK(validate_leader(w).pass);
        CHECK(validate_dispersion(w).pass);
      }
}

TEST_CASE("leader election sweep: unique leader and dispersion") {
  for (GraphKind kind : {GraphKind::path, GraphKind::ring, GraphKind::star, GraphKind::random_connected})
    for (int n : {4, 9, 16, 32})
      for (std::uint64_t s = 1; s <= 8; ++s) {
        PortGraph g = generate_graph(kind, n, kind == GraphKind::random_connected ? n / 2 : 0, s);
        for (int pl = 0; pl < 3; ++pl) {
          Placement P = pl == 0 ? Placement::dispersed() : pl == 1 ? Placement::rooted(static_cast<NodeId>(s % n)) : Placement::general(s);
          World w = init_world(g, P, {IdPolicy::Kind::seeded_permutation, s});
          RunReport rep = elect_leader(w, 64L * g.edge_count() + 64);
          CAPTURE(to_string(kind));
          CAPTURE(n);
          CAPTURE(s);
          CAPTURE(pl);
          CHECK(rep.termination == Termination::completed);
          CHECK(validate_leader(w).pass);
          CHECK(validate_dispersion(w).pass);
        }
      }
}

TEST_CASE("a single local leader on a dispersed path is elected within a constant times m") {
  // On a path with a unique degree-1 id winner, global election finishes in O(m).
  for (int n : {4, 8, 16, 32}) {
    World w = init_world(generate_graph(GraphKind::path, n, 0, 1), Placement::dispersed());
    RunReport rep = elect_leader(w, 100000);
    CHECK(validate_leader(w).pass);
    CHECK(rep.rounds <= 16L * w.graph().edge_count());
  }
}

TEST_CASE("flipping the head-meeting rule keeps the invariants") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    World w = init_world(generate_graph(GraphKind::random_connected, 16, 8, s), Placement::general(s),
                         {IdPolicy::Kind::seeded_permutation, s});
    RunReport rep = elect_leader(w, 100000, ElectionOptions{false});
    CHECK(rep.termination == Termination::completed);
    CHECK(validate_leader(w).pass);
    CHECK(validate_dispersion(w).pass);
  }
}
