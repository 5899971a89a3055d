#include <doctest.h>

#include <algorithm>

#include "agentnet/mpsim.hpp"
#include "agentnet/oracles.hpp"

using namespace agentnet;

namespace {

// Smallest k with 2^k >= n^2, an integer form of ceil(2 log2 n).
long two_log_bits(long n) {
  long k = 0;
  while ((1L << k) < n * n) ++k;
  return k;
}

MpConfig config_for(const PortGraph& g) { return {g.node_count(), g.max_degree(), 2.0}; }

NodeId node_of(const MpReport& r, AgentId id) {
  return static_cast<NodeId>(std::find(r.node_ids.begin(), r.node_ids.end(), id) - r.node_ids.begin());
}

}  // namespace

TEST_CASE("round length is two sweeps of max degree per id bit") {
  for (int n : {2, 3, 5, 8, 17, 32})
    CHECK(mp_round_length({n, 3, 2.0}) == 2 * 3 * two_log_bits(n));
  CHECK(mp_round_length({1, 0, 2.0}) == 0);
}

TEST_CASE("flooding reaches every node and matches the direct run each round") {
  for (GraphKind kind : {GraphKind::path, GraphKind::ring, GraphKind::star, GraphKind::random_connected})
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const int n = 12;
      PortGraph g = generate_graph(kind, n, kind == GraphKind::random_connected ? 6 : 0, s);
      const int diam = graph_stats(g).diameter;
      World w = init_world(g, Placement::dispersed(), {IdPolicy::Kind::seeded_permutation, s});
      MpAlgorithm alg = flood_algorithm(1, diam);
      MpReport r = simulate_mp(w, alg, config_for(g), 1L << 30);
      REQUIRE(r.run.termination == Termination::completed);
      CHECK(r.states == direct_mp_run(g, r.node_ids, alg));
      CHECK(r.sim_rounds == diam * r.round_length);
      for (const auto& st : r.states.back()) CHECK(st.value == 1);
    }
}

TEST_CASE("BFS labels equal oracle distances") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    PortGraph g = generate_graph(GraphKind::random_connected, 16, 8, s);
    World w = init_world(g, Placement::dispersed(), {IdPolicy::Kind::seeded_permutation, s});
    MpAlgorithm alg = bfs_label_algorithm(3, graph_stats(g).diameter + 1);
    MpReport r = simulate_mp(w, alg, config_for(g), 1L << 30);
    auto d = bfs_distances(g, node_of(r, 3));
    for (NodeId v = 0; v < 16; ++v) CHECK(r.states.back()[v].value == d[v]);
    CHECK(w.agents()[w.index_of(3)].mp.state.value == 0);
  }
}

TEST_CASE("zero rounds leave the states untouched") {
  PortGraph g = generate_graph(GraphKind::ring, 5, 0, 1);
  World w = init_world(g, Placement::dispersed());
  MpAlgorithm alg = bfs_label_algorithm(1, 0);
  MpReport r = simulate_mp(w, alg, config_for(g), 10);
  CHECK(r.sim_rounds == 0);
  CHECK(r.states.size() == 1);
  for (const auto& a : w.agents()) CHECK(a.mp.state == alg.init(a.id, 2));
}

TEST_CASE("the maximum id spreads to every node") {
  PortGraph g = generate_graph(GraphKind::random_tree, 10, 0, 4);
  World w = init_world(g, Placement::dispersed(), {IdPolicy::Kind::seeded_permutation, 4});
  MpReport r = simulate_mp(w, max_id_leader_algorithm(10), config_for(g), 1L << 30);
  int leaders = 0;
  for (const auto& a : w.agents()) {
    CHECK(a.mp.state.value == 10);
    leaders += a.mp.state.value == a.mp.state.aux;
  }
  CHECK(leaders == 1);
}

TEST_CASE("rooted and general starts disperse first and match the direct run") {
  for (std::uint64_t s = 1; s <= 4; ++s) {
    PortGraph g = generate_graph(GraphKind::path, 9, 0, s);
    World rooted = init_world(g, Placement::rooted(0), {IdPolicy::Kind::seeded_permutation, s});
    MpAlgorithm flood = flood_algorithm(2, 8);
    MpReport r = simulate_mp_from_any_config(rooted, flood, config_for(g), 1L << 30);
    CHECK(r.election.rounds > 0);
    CHECK(r.election.rounds < r.run.rounds);
    CHECK(r.states == direct_mp_run(g, r.node_ids, flood));

    PortGraph h = generate_graph(GraphKind::random_connected, 14, 7, s);
    World general = init_world(h, Placement::general(s), {IdPolicy::Kind::seeded_permutation, s});
    MpAlgorithm bfs = bfs_label_algorithm(1, 14);
    MpReport q = simulate_mp_from_any_config(general, bfs, config_for(h), 1L << 30);
    auto d = bfs_distances(h, node_of(q, 1));
    for (NodeId v = 0; v < 14; ++v) CHECK(q.states.back()[v].value == d[v]);
  }
}

TEST_CASE("bad inputs are rejected") {
  PortGraph g = generate_graph(GraphKind::star, 6, 0, 1);
  World rooted = init_world(g, Placement::rooted(0));
  CHECK_THROWS_AS(simulate_mp(rooted, flood_algorithm(1, 2), config_for(g), 1000), std::invalid_argument);
  World w = init_world(g, Placement::dispersed());
  CHECK_THROWS_AS(simulate_mp(w, flood_algorithm(1, 2), {6, 2, 2.0}, 100000), std::invalid_argument);
  CHECK_THROWS_AS(mp_algorithm("gossip", 1, 2), std::invalid_argument);
}

TEST_CASE("ids too wide for the schedule are rejected") {
  // With c = 0.5 and n = 4 the schedule has one bit, which cannot hold id 4.
  PortGraph g = generate_graph(GraphKind::complete, 4, 0, 1);
  World w = init_world(g, Placement::dispersed());
  CHECK_THROWS_AS(simulate_mp(w, flood_algorithm(1, 3), {4, 3, 0.5}, 100000), std::invalid_argument);
}
