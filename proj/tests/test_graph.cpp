#include <doctest.h>

#include <algorithm>
#include <set>

#include "agentnet/graph.hpp"
#include "agentnet/oracles.hpp"

using namespace agentnet;

namespace {

const GraphKind kAllKinds[] = {GraphKind::path,     GraphKind::ring,        GraphKind::star,
                               GraphKind::complete, GraphKind::random_tree, GraphKind::random_connected};

std::string parse_error(const std::string& text) {
  try {
    parse_graph_text(text);
  } catch (const GraphError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("smallest graph parses") {
  PortGraph g = parse_graph_text("2 1\n0 1 1 1 5.0\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 1);
  CHECK(g.slot(0, 1).weight == Rational(5));
}

TEST_CASE("parser diagnostics name the problem and the line") {
  CHECK(parse_error("3 2\n0 1 1 1 1\n").find("edge count mismatch") != std::string::npos);
  CHECK(parse_error("x y\n").find("malformed header") != std::string::npos);
  CHECK(parse_error("2 1\n0 0 1 1 1\n").find("self-loop") != std::string::npos);
  CHECK(parse_error("3 2\n0 1 1 1 1\n0 2 1 1 2\n").find("port conflict") != std::string::npos);
  CHECK(parse_error("3 2\n0 1 1 1 1\n1 2 2 1 1\n").find("duplicate weight") != std::string::npos);
  CHECK(parse_error("4 2\n0 1 1 1 1\n2 3 1 1 2\n").find("disconnected") != std::string::npos);
  CHECK(parse_error("3 2\n# comment\n0 1 1 1 1\n0 1 2 2 2\n").find("line 4") != std::string::npos);
}

TEST_CASE("perturbation breaks duplicate weights deterministically") {
  const std::string text = "3 2\n0 1 1 1 1\n1 2 2 1 1\n";
  PortGraph a = parse_graph_text(text, {true});
  PortGraph b = parse_graph_text(text, {true});
  CHECK(a == b);
  CHECK(a.edges()[0].w != a.edges()[1].w);
}

TEST_CASE("path statistics") {
  PortGraph g = parse_graph_text("4 3\n0 1 1 1 1\n1 2 2 1 2\n2 3 2 1 3\n");
  CHECK(graph_stats(g) == GraphStats{4, 3, 2, 3});
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 2);
  CHECK(g.degree(3) == 1);
}

TEST_CASE("complete graph statistics") { CHECK(graph_stats(generate_graph(GraphKind::complete, 5, 0, 1)) == GraphStats{5, 10, 4, 1}); }

TEST_CASE("star and random_connected shapes") {
  PortGraph star = generate_graph(GraphKind::star, 5, 0, 3);
  std::vector<int> deg;
  for (NodeId v = 0; v < 5; ++v) deg.push_back(star.degree(v));
  std::sort(deg.begin(), deg.end());
  CHECK(deg == std::vector<int>{1, 1, 1, 1, 4});
  CHECK(generate_graph(GraphKind::random_connected, 16, 10, 7).edge_count() == 25);
}

TEST_CASE("impossible generator parameters are rejected") {
  CHECK_THROWS_AS(generate_graph(GraphKind::ring, 2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_graph(GraphKind::random_connected, 4, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_graph(GraphKind::path, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph_kind("torus"), std::invalid_argument);
}

TEST_CASE("diameter agrees with an all-pairs oracle") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    PortGraph g = generate_graph(GraphKind::random_connected, 16, 10, s);
    int diam = 0;
    for (const auto& row : all_pairs_distances(g)) diam = std::max(diam, *std::max_element(row.begin(), row.end()));
    CHECK(graph_stats(g).diameter == diam);
  }
}

TEST_CASE("generated graphs satisfy every structural invariant") {
  for (GraphKind kind : kAllKinds)
    for (int n : {1, 2, 3, 7, 16, 33})
      for (std::uint64_t s = 1; s <= 4; ++s) {
        if (kind == GraphKind::ring && n < 3) continue;
        const int extra = kind == GraphKind::random_connected ? std::min(n, n * (n - 1) / 2 - (n - 1)) : 0;
        PortGraph g = generate_graph(kind, n, extra, s);
        CAPTURE(to_string(kind));
        CAPTURE(n);
        // Ports are 1..degree and every edge is symmetric.
        for (NodeId v = 0; v < n; ++v)
          for (Port p = 1; p <= g.degree(v); ++p) {
            const PortSlot& out = g.slot(v, p);
            REQUIRE(out.neighbor != v);
            const PortSlot& back = g.slot(out.neighbor, out.reverse);
            CHECK(back.neighbor == v);
            CHECK(back.reverse == p);
            CHECK(back.weight == out.weight);
          }
        // Weights are pairwise distinct.
        std::vector<Rational> w;
        for (const auto& e : g.edges()) w.push_back(e.w);
        std::sort(w.begin(), w.end());
        CHECK(std::adjacent_find(w.begin(), w.end()) == w.end());
        // Connected.
        auto d = bfs_distances(g, 0);
        CHECK(std::none_of(d.begin(), d.end(), [](int x) { return x < 0; }));
        // Round trip and determinism.
        CHECK(parse_graph_text(serialize_graph(g)) == g);
        CHECK(serialize_graph(generate_graph(kind, n, extra, s)) == serialize_graph(g));
      }
}

TEST_CASE("port numbering is not shared across an edge's endpoints") {
  // Over many seeds, some edge of a complete graph gets different port numbers at its ends.
  bool differs = false;
  for (std::uint64_t s = 1; s <= 5 && !differs; ++s)
    for (const auto& e : generate_graph(GraphKind::complete, 6, 0, s).edges()) differs = differs || e.pu != e.pv;
  CHECK(differs);
}

TEST_CASE("rationals order and print exactly") {
  CHECK(Rational::parse_decimal("0.1") + Rational::parse_decimal("0.2") == Rational::parse_decimal("0.3"));
  CHECK(Rational::parse_decimal("2.50").to_decimal() == "2.5");
  CHECK(Rational::parse_decimal("1.25") < Rational::parse_decimal("1.3"));
  CHECK_THROWS_AS(Rational::parse_decimal("abc"), std::invalid_argument);
}
