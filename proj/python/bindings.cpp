#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agentnet/apps.hpp"
#include "agentnet/election.hpp"
#include "agentnet/experiment.hpp"
#include "agentnet/mpsim.hpp"
#include "agentnet/mst.hpp"
#include "agentnet/oracles.hpp"

namespace py = pybind11;
using namespace agentnet;

namespace {

// dispersed | rooted:NODE | general:SEED, matching the CLI spelling.
Placement placement_from(const std::string& text) {
  auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "dispersed" && arg.empty()) return Placement::dispersed();
  if (kind == "rooted") return Placement::rooted(arg.empty() ? 0 : std::stoi(arg));
  if (kind == "general") return Placement::general(arg.empty() ? 1 : std::stoull(arg));
  throw std::invalid_argument("unknown placement '" + text + "'");
}

py::tuple edge_tuple(const Edge& e) { return py::make_tuple(e.u, e.v, e.w.to_decimal()); }

py::list edge_list(const std::vector<Edge>& es) {
  py::list out;
  for (const Edge& e : es) out.append(edge_tuple(e));
  return out;
}

py::dict run_dict(const RunReport& r) {
  py::dict d;
  d["rounds"] = r.rounds;
  d["termination"] = to_string(r.termination);
  d["peak_bits"] = r.peak_bits;
  d["leader"] = r.leader ? py::cast(*r.leader) : py::none();
  return d;
}

py::dict app_dict(const AppReport& r) {
  py::dict d = run_dict(r.run);
  d["election_rounds"] = r.election.rounds;
  d["app_rounds"] = r.app_rounds;
  d["gather_node"] = r.gather_node ? py::cast(*r.gather_node) : py::none();
  d["set"] = r.set;
  return d;
}

py::list state_values(const std::vector<std::vector<MpState>>& states) {
  py::list out;
  for (const auto& row : states) {
    std::vector<long> values;
    for (const MpState& s : row) values.push_back(s.value);
    out.append(values);
  }
  return out;
}

py::dict record_dict(const RunRecord& r) {
  py::dict d;
  for (const auto& [k, v] : r.fields) d[py::str(k)] = v;
  return d;
}

}  // namespace

PYBIND11_MODULE(_agentnet, m) {
  m.doc() = "Mobile-agent simulator: leader election, MST, gathering, MIS, MDS and message-passing simulation.";

  py::class_<PortGraph, std::shared_ptr<PortGraph>>(m, "Graph")
      .def_static("parse", [](const std::string& text, bool perturb) { return parse_graph_text(text, {perturb}); },
                  py::arg("text"), py::arg("perturb_weights") = false)
      .def_static("generate",
                  [](const std::string& kind, int n, int extra, std::uint64_t seed) {
                    return generate_graph(parse_graph_kind(kind), n, extra, seed);
                  },
                  py::arg("kind"), py::arg("n"), py::arg("extra_edges") = 0, py::arg("seed") = 1)
      .def_property_readonly("node_count", &PortGraph::node_count)
      .def_property_readonly("edge_count", &PortGraph::edge_count)
      .def_property_readonly("max_degree", &PortGraph::max_degree)
      .def("degree", &PortGraph::degree)
      .def("edges", [](const PortGraph& g) { return edge_list(g.edges()); })
      .def("serialize", &serialize_graph)
      .def("diameter", [](const PortGraph& g) { return graph_stats(g).diameter; })
      .def("bfs_distances", &bfs_distances);

  py::class_<World>(m, "World")
      .def(py::init([](const PortGraph& g, const std::string& placement, std::optional<std::uint64_t> id_seed) {
             IdPolicy ids;
             if (id_seed) ids = {IdPolicy::Kind::seeded_permutation, *id_seed};
             return init_world(g, placement_from(placement), ids);
           }),
           py::arg("graph"), py::arg("placement") = "dispersed", py::arg("id_seed") = py::none())
      .def_property_readonly("round", &World::round)
      .def_property_readonly("positions", &World::positions)
      .def_property_readonly("ids", [](const World& w) {
        std::vector<AgentId> ids;
        for (const Agent& a : w.agents()) ids.push_back(a.id);
        return ids;
      })
      .def_property_readonly("statuses", [](const World& w) {
        std::vector<std::string> out;
        for (const Agent& a : w.agents()) out.push_back(to_string(a.status));
        return out;
      })
      .def("occupancy", &World::occupancy);

  m.def("elect_leader", [](World& w, long max_rounds) { return run_dict(elect_leader(w, max_rounds)); },
        py::arg("world"), py::arg("max_rounds") = 1L << 30);
  m.def(
      "run_mst",
      [](World& w, long max_rounds) {
        MstReport r = run_mst(w, max_rounds);
        py::dict d = run_dict(r.run);
        d["election_rounds"] = r.election.rounds;
        d["phases"] = r.phases;
        d["components"] = r.components;
        d["edges"] = edge_list(r.edges);
        d["total"] = r.total.to_decimal();
        return d;
      },
      py::arg("world"), py::arg("max_rounds") = 1L << 30);
  m.def("gather", [](World& w, long max_rounds) { return app_dict(gather(w, max_rounds)); }, py::arg("world"),
        py::arg("max_rounds") = 1L << 30);
  m.def("compute_mis", [](World& w, long max_rounds) { return app_dict(compute_mis(w, max_rounds)); },
        py::arg("world"), py::arg("max_rounds") = 1L << 30);
  m.def("compute_mds", [](World& w, long max_rounds) { return app_dict(compute_mds(w, max_rounds)); },
        py::arg("world"), py::arg("max_rounds") = 1L << 30);
  m.def(
      "simulate_mp",
      [](World& w, const std::string& algorithm, long rounds, AgentId source, double c, long max_rounds) {
        const PortGraph& g = w.graph();
        const MpAlgorithm alg = mp_algorithm(algorithm, source, rounds);
        const MpConfig cfg{g.node_count(), g.max_degree(), c};
        MpReport r = simulate_mp_from_any_config(w, alg, cfg, max_rounds);
        py::dict d = run_dict(r.run);
        d["election_rounds"] = r.election.rounds;
        d["round_length"] = r.round_length;
        d["sim_rounds"] = r.sim_rounds;
        d["node_ids"] = r.node_ids;
        d["states"] = state_values(r.states);
        return d;
      },
      py::arg("world"), py::arg("algorithm"), py::arg("rounds"), py::arg("source") = 1, py::arg("c") = 2.0,
      py::arg("max_rounds") = 1L << 30);
  m.def(
      "direct_mp_run",
      [](const PortGraph& g, const std::vector<AgentId>& node_ids, const std::string& algorithm, long rounds,
         AgentId source) { return state_values(direct_mp_run(g, node_ids, mp_algorithm(algorithm, source, rounds))); },
      py::arg("graph"), py::arg("node_ids"), py::arg("algorithm"), py::arg("rounds"), py::arg("source") = 1);

  m.def("kruskal_mst", [](const PortGraph& g) {
    MstResult r = kruskal_mst(g);
    return py::make_tuple(edge_list(r.edges), r.total.to_decimal());
  });
  auto verdict = [](const ValidationReport& r) { return py::make_tuple(r.pass, r.witness); };
  m.def("validate_leader", [verdict](const World& w) { return verdict(validate_leader(w)); });
  m.def("validate_dispersion", [verdict](const World& w) { return verdict(validate_dispersion(w)); });
  m.def("validate_gathered", [verdict](const World& w) { return verdict(validate_gathered(w)); });
  m.def("validate_mis", [verdict](const PortGraph& g, const std::vector<NodeId>& s) { return verdict(validate_mis(g, s)); });
  m.def("validate_mds", [verdict](const PortGraph& g, const std::vector<NodeId>& s) { return verdict(validate_mds(g, s)); });
  m.def("brute_is_mis", &brute_is_mis);
  m.def("brute_is_mds", &brute_is_mds);

  m.def(
      "run_experiment",
      [](const std::string& spec_json) {
        ExperimentResult res = run_experiment(spec_from_json(spec_json));
        py::list out;
        for (const auto& r : res.records) out.append(record_dict(r));
        return out;
      },
      py::arg("spec_json"));
  m.def(
      "fit_bound",
      [](const std::vector<std::string>& lines, const std::string& x, const std::string& y) {
        std::vector<RunRecord> recs;
        for (const auto& l : lines) recs.push_back(parse_record(l));
        FitResult f = fit_bound(recs, x, y);
        py::dict d;
        d["constant"] = f.constant;
        d["max_ratio"] = f.max_ratio;
        d["by_size"] = f.by_size;
        d["growth"] = f.growth;
        return d;
      },
      py::arg("lines"), py::arg("x"), py::arg("y"));

  py::register_exception<SimulationFault>(m, "SimulationFault", PyExc_RuntimeError);
}
