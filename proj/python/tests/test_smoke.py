import json

import pytest
from hypothesis import given, settings, strategies as st

import agentnet


def test_graph_parse_and_generate():
    g = agentnet.Graph.parse("3 3\n0 1 1 1 1\n1 2 2 1 2\n0 2 2 2 3\n")
    assert (g.node_count, g.edge_count, g.max_degree) == (3, 3, 2)
    assert agentnet.kruskal_mst(g)[1] == "3.0"
    ring = agentnet.Graph.generate("ring", 8, seed=3)
    assert ring.diameter() == 4
    with pytest.raises(ValueError):
        agentnet.Graph.generate("hypercube", 8)


def test_election_leaves_one_leader_dispersed():
    g = agentnet.Graph.generate("random_connected", 12, 6, 2)
    w = agentnet.World(g, "general:2", id_seed=2)
    r = agentnet.elect_leader(w)
    assert r["termination"] == "completed"
    assert w.statuses.count("leader") == 1
    assert agentnet.validate_leader(w)[0]
    assert agentnet.validate_dispersion(w)[0]
    assert sorted(w.occupancy()) == [1] * 12


def test_mst_matches_kruskal():
    g = agentnet.Graph.generate("random_connected", 14, 9, 5)
    r = agentnet.run_mst(agentnet.World(g, "rooted:0", id_seed=5))
    edges, total = agentnet.kruskal_mst(g)
    assert r["total"] == total
    assert [e[:2] for e in r["edges"]] == [e[:2] for e in edges]
    assert r["components"][0] == 14


def test_applications():
    g = agentnet.Graph.generate("star", 6, seed=1)
    w = agentnet.World(g, "rooted:0", id_seed=1)
    r = agentnet.gather(w)
    assert w.occupancy()[r["gather_node"]] == 6
    mis = agentnet.compute_mis(agentnet.World(g, "general:4", id_seed=4))["set"]
    assert len(mis) in (1, 5)
    assert agentnet.brute_is_mis(g, mis)
    mds = agentnet.compute_mds(agentnet.World(g))["set"]
    assert agentnet.validate_mds(g, mds)[0]


def test_simulated_flood_matches_direct_run():
    g = agentnet.Graph.generate("random_tree", 10, seed=7)
    w = agentnet.World(g, id_seed=7)
    r = agentnet.simulate_mp(w, "bfs_label", 10, source=1)
    assert r["states"] == agentnet.direct_mp_run(g, r["node_ids"], "bfs_label", 10, 1)
    assert r["sim_rounds"] == 10 * r["round_length"]
    root = r["node_ids"].index(1)
    assert r["states"][-1] == g.bfs_distances(root)


def test_experiment_records_and_fit():
    spec = {"generate": "path:8", "seed_first": 1, "seed_last": 4}
    recs = agentnet.run_experiment(json.dumps(spec))
    assert [r["seed"] for r in recs] == ["1", "2", "3", "4"]
    assert all(r["leader_unique"] == "true" and r["ok"] == "true" for r in recs)
    lines = [" ".join(f"{k}={v}" for k, v in r.items()) for r in recs]
    fit = agentnet.fit_bound(lines, "m", "rounds")
    assert fit["max_ratio"] >= fit["constant"] > 0
    with pytest.raises(ValueError):
        agentnet.run_experiment("{\"algo\": \"sort\", \"generate\": \"path:4\"}")


@settings(max_examples=25, deadline=None)
@given(
    kind=st.sampled_from(["path", "star", "complete", "random_tree", "random_connected"]),
    n=st.integers(min_value=1, max_value=12),
    seed=st.integers(min_value=1, max_value=10_000),
    placement=st.sampled_from(["dispersed", "rooted:0", "general:9"]),
)
def test_property_mis_and_election(kind, n, seed, placement):
    extra = min(n, n * (n - 1) // 2 - (n - 1)) if kind == "random_connected" else 0
    g = agentnet.Graph.generate(kind, n, extra, seed)
    w = agentnet.World(g, placement, id_seed=seed)
    agentnet.elect_leader(w)
    assert agentnet.validate_leader(w)[0]
    mis = agentnet.compute_mis(agentnet.World(g, placement, id_seed=seed))["set"]
    assert agentnet.brute_is_mis(g, mis)
