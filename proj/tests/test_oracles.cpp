#include <doctest.h>

#include "agentnet/election.hpp"
#include "agentnet/oracles.hpp"

using namespace agentnet;

TEST_CASE("Kruskal on small graphs") {
  PortGraph tri = parse_graph_text("3 3\n0 1 1 1 1\n1 2 2 1 2\n0 2 2 2 3\n");
  CHECK(kruskal_mst(tri).total == Rational(3));
  PortGraph path = generate_graph(GraphKind::path, 7, 0, 2);
  CHECK(kruskal_mst(path).edges.size() == 6);
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const int n = 3 + static_cast<int>(s % 8);
    PortGraph g = generate_graph(GraphKind::random_connected, n, std::min(n, n * (n - 1) / 2 - (n - 1)), s);
    MstResult k = kruskal_mst(g), e = exhaustive_mst(g);
    CHECK(k.total == e.total);
    CHECK(k.edges.size() == e.edges.size());
  }
}

TEST_CASE("leader validator catches injected faults") {
  PortGraph g = generate_graph(GraphKind::ring, 6, 0, 1);
  World w = init_world(g, Placement::dispersed());
  elect_leader(w, 100000);
  CHECK(validate_leader(w).pass);
  World two = w;
  for (auto& a : two.agents_mut()) a.status = a.id <= 2 ? Status::leader : Status::non_candidate;
  auto r = validate_leader(two);
  CHECK_FALSE(r.pass);
  CHECK(r.witness.find("1,2") != std::string::npos);
  World none = w;
  for (auto& a : none.agents_mut()) a.status = Status::non_candidate;
  CHECK_FALSE(validate_leader(none).pass);
}

TEST_CASE("dispersion validator") {
  PortGraph g = generate_graph(GraphKind::path, 5, 0, 1);
  CHECK(validate_dispersion(init_world(g, Placement::dispersed())).pass);
  auto r = validate_dispersion(init_world(g, Placement::rooted(2)));
  CHECK_FALSE(r.pass);
  CHECK(r.witness.find("node=") != std::string::npos);
}

TEST_CASE("MIS and MDS validators") {
  PortGraph single = generate_graph(GraphKind::path, 1, 0, 1);
  CHECK(validate_mis(single, {0}).pass);
  CHECK(validate_mds(single, {0}).pass);
  PortGraph path = parse_graph_text("4 3\n0 1 1 1 1\n1 2 2 1 2\n2 3 2 1 3\n");
  CHECK_FALSE(validate_mis(path, {}).pass);
  CHECK_FALSE(validate_mds(path, {}).pass);
  CHECK(validate_mis(path, {0, 2}).pass);
  CHECK(validate_mis(path, {0, 3}).pass);
  CHECK_FALSE(validate_mis(path, {0, 1}).pass);
  CHECK_FALSE(validate_mis(path, {0}).pass);
  CHECK(validate_mds(path, {1, 2}).pass);
  CHECK_FALSE(validate_mds(path, {0, 1, 2}).pass);
  CHECK(brute_is_mis(path, {1, 3}));
  CHECK_FALSE(brute_is_mis(path, {1}));
  CHECK(brute_is_mds(path, {0, 2}));
  CHECK_FALSE(brute_is_mds(path, {0, 1, 3}));
  CHECK(all_maximal_independent_sets(path).size() == 3);
}

TEST_CASE("direct scan and brute force agree on every subset") {
  for (std::uint64_t s = 1; s <= 6; ++s) {
    PortGraph g = generate_graph(GraphKind::random_connected, 8, 5, s);
    for (unsigned mask = 0; mask < 256; ++mask) {
      std::vector<NodeId> set;
      for (int v = 0; v < 8; ++v)
        if (mask >> v & 1) set.push_back(v);
      CHECK(validate_mis(g, set).pass == brute_is_mis(g, set));
      CHECK(validate_mds(g, set).pass == brute_is_mds(g, set));
    }
  }
}

TEST_CASE("tree pointer validator") {
  PortGraph g = generate_graph(GraphKind::path, 3, 0, 1);
  World w = init_world(g, Placement::dispersed());
  CHECK(validate_tree_pointers(w).pass);
  // A two-cycle: each endpoint of an edge names the other as parent.
  const Edge& e = g.edges()[0];
  for (int k = 0; k < w.size(); ++k) {
    Agent& a = w.agents_mut()[k];
    if (w.positions()[k] == e.u) a.comp = {0, e.pu, {e.pu}, {}};
    if (w.positions()[k] == e.v) a.comp = {0, e.pv, {e.pv}, {}};
  }
  CHECK_FALSE(validate_tree_pointers(w).pass);
}
