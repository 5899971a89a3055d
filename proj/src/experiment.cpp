#include "agentnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "agentnet/apps.hpp"
#include "agentnet/election.hpp"
#include "agentnet/mpsim.hpp"
#include "agentnet/mst.hpp"
#include "agentnet/oracles.hpp"

namespace agentnet {

using nlohmann::json;

std::string to_json(const ExperimentSpec& s) {
  json j = {{"graph_file", s.graph_file},     {"generate", s.generate},       {"perturb_weights", s.perturb_weights}, {"placement", s.placement},
            {"algo", s.algo},                 {"seed_first", s.seed_first},   {"seed_last", s.seed_last},
            {"max_rounds", s.max_rounds},     {"trace_path", s.trace_path},   {"trace_level", s.trace_level},
            {"metrics_path", s.metrics_path}, {"mst_out", s.mst_out},         {"validate", s.validate},
            {"threads", s.threads}};
  return j.dump(2);
}

ExperimentSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("spec is not valid JSON: ") + e.what());
  }
  ExperimentSpec s;
  auto take = [&j](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  try {
    take("graph_file", s.graph_file);
    take("generate", s.generate);
    take("perturb_weights", s.perturb_weights);
    take("placement", s.placement);
    take("algo", s.algo);
    take("seed_first", s.seed_first);
    take("seed_last", s.seed_last);
    take("max_rounds", s.max_rounds);
    take("trace_path", s.trace_path);
    take("trace_level", s.trace_level);
    take("metrics_path", s.metrics_path);
    take("mst_out", s.mst_out);
    take("validate", s.validate);
    take("threads", s.threads);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("spec field has the wrong type: ") + e.what());
  }
  return s;
}

std::string RunRecord::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return {};
}

std::string format_record(const RunRecord& r) {
  std::string out;
  for (const auto& [k, v] : r.fields) {
    if (!out.empty()) out += ' ';
    out += k + '=' + v;
  }
  return out;
}

RunRecord parse_record(const std::string& line) {
  RunRecord r;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("metrics field without '=': " + tok);
    r.fields.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  r.ok = r.get("ok") != "false";
  return r;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

long to_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + ": '" + s + "'");
  }
}

std::string no_spaces(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '_');
  std::replace(s.begin(), s.end(), '\n', '_');
  return s;
}

const char* flag(bool b) { return b ? "true" : "false"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct GraphPlan {
  std::shared_ptr<const PortGraph> fixed;  // file graph or seeded generator
  GraphKind kind = GraphKind::path;
  int n = 0;
  int extra = 0;
  std::string label;
};

GraphPlan plan_graph(const ExperimentSpec& spec) {
  GraphPlan p;
  if (spec.graph_file.empty() == spec.generate.empty())
    throw std::invalid_argument("give exactly one of a graph file or a generator");
  if (!spec.graph_file.empty()) {
    std::istringstream in(read_file(spec.graph_file));
    p.fixed = std::make_shared<const PortGraph>(parse_graph(in, {spec.perturb_weights}));
    p.label = "file:" + spec.graph_file;
    return p;
  }
  auto parts = split(spec.generate, ':');
  if (parts.size() < 2 || parts.size() > 4) throw std::invalid_argument("generator must be KIND:N[:EXTRA][:SEED]");
  p.kind = parse_graph_kind(parts[0]);
  p.n = static_cast<int>(to_long(parts[1], "node count"));
  if (parts.size() >= 3 && !parts[2].empty()) p.extra = static_cast<int>(to_long(parts[2], "extra edge count"));
  p.label = spec.generate;
  if (parts.size() == 4)
    p.fixed = std::make_shared<const PortGraph>(
        generate_graph(p.kind, p.n, p.extra, static_cast<std::uint64_t>(to_long(parts[3], "generator seed"))));
  return p;
}

std::shared_ptr<const PortGraph> graph_for(const GraphPlan& p, long seed) {
  if (p.fixed) return p.fixed;
  return std::make_shared<const PortGraph>(generate_graph(p.kind, p.n, p.extra, static_cast<std::uint64_t>(seed)));
}

Placement placement_for(const std::string& text, long seed) {
  auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "dispersed" && arg.empty()) return Placement::dispersed();
  if (kind == "rooted" && !arg.empty()) return Placement::rooted(static_cast<NodeId>(to_long(arg, "root node")));
  if (kind == "general")
    return Placement::general(static_cast<std::uint64_t>(arg.empty() ? seed : to_long(arg, "placement seed")));
  if (kind == "file" && !arg.empty()) {
    std::istringstream in(read_file(arg));
    std::vector<NodeId> map;
    long v;
    while (in >> v) map.push_back(static_cast<NodeId>(v));
    if (!in.eof()) throw std::invalid_argument("placement file '" + arg + "' holds a non-integer");
    return Placement::explicit_map(std::move(map));
  }
  throw std::invalid_argument("unknown placement '" + text + "'");
}

// Payload round budget: n rounds outlast any diameter; the source is the agent with id 1.
MpAlgorithm payload_for(const std::string& name, int n) { return mp_algorithm(name, 1, n); }

long budget_for(const ExperimentSpec& spec, const PortGraph& g) {
  const long m = std::max(1, g.edge_count());
  long extra = 0;
  if (spec.algo.rfind("simulate-mp:", 0) == 0) {
    // The simulation itself takes a fixed number of rounds on top of dispersal.
    extra = static_cast<long>(g.node_count()) * mp_round_length({g.node_count(), g.max_degree(), 2.0});
  }
  if (spec.max_rounds.empty()) return 64 * m + extra;
  if (spec.max_rounds[0] == 'x') return to_long(spec.max_rounds.substr(1), "round multiplier") * m + extra;
  return to_long(spec.max_rounds, "max rounds");
}

long peak(const RunReport& r) {
  long best = 0;
  for (long b : r.peak_bits) best = std::max(best, b);
  return best;
}

std::string mst_listing(const std::vector<Edge>& edges, const Rational& total) {
  std::ostringstream s;
  for (const Edge& e : edges) s << e.u << ' ' << e.v << ' ' << e.w.to_decimal() << '\n';
  s << "total " << total.to_decimal() << '\n';
  return s.str();
}

void run_algorithm(const ExperimentSpec& spec, World& w, long budget, RunRecord& r) {
  const PortGraph& g = w.graph();
  auto add = [&r](const std::string& k, const std::string& v) { r.fields.emplace_back(k, v); };
  auto check = [&](const std::string& key, bool pass) {
    add(key, flag(pass));
    r.ok = r.ok && pass;
  };
  RunReport main;
  if (spec.algo == "leader") {
    main = elect_leader(w, budget);
    add("rounds", std::to_string(main.rounds));
    add("termination", to_string(main.termination));
    add("memory_bits", std::to_string(peak(main)));
    add("leader", main.leader ? std::to_string(*main.leader) : "none");
    if (spec.validate) {
      check("leader_unique", validate_leader(w).pass);
      check("dispersed", validate_dispersion(w).pass);
    }
  } else if (spec.algo == "mst") {
    MstReport rep = run_mst(w, budget);
    main = rep.run;
    add("rounds", std::to_string(main.rounds));
    add("termination", to_string(main.termination));
    add("memory_bits", std::to_string(peak(main)));
    add("election_rounds", std::to_string(rep.election.rounds));
    add("mst_rounds", std::to_string(main.rounds - rep.election.rounds));
    add("phases", std::to_string(rep.phases));
    add("mst_weight", rep.total.to_decimal());
    r.mst = mst_listing(rep.edges, rep.total);
    if (spec.validate) {
      MstResult ref = kruskal_mst(g);
      add("kruskal", ref.total.to_decimal());
      bool same = ref.edges.size() == rep.edges.size();
      for (std::size_t i = 0; same && i < ref.edges.size(); ++i)
        same = ref.edges[i].u == rep.edges[i].u && ref.edges[i].v == rep.edges[i].v;
      check("mst_equal", same && ref.total == rep.total);
      check("tree_pointers", validate_tree_pointers(w).pass);
    }
  } else if (spec.algo == "gather" || spec.algo == "mis" || spec.algo == "mds") {
    const AppKind kind = spec.algo == "gather" ? AppKind::gather : spec.algo == "mis" ? AppKind::mis : AppKind::mds;
    AppReport rep = run_app(w, kind, budget);
    main = rep.run;
    add("rounds", std::to_string(main.rounds));
    add("termination", to_string(main.termination));
    add("memory_bits", std::to_string(peak(main)));
    add("election_rounds", std::to_string(rep.election.rounds));
    add("app_rounds", std::to_string(rep.app_rounds));
    if (kind == AppKind::gather) {
      add("gather_node", rep.gather_node ? std::to_string(*rep.gather_node) : "none");
      if (spec.validate) check("gathered", validate_gathered(w).pass && rep.gather_node.has_value());
    } else {
      add("set_size", std::to_string(rep.set.size()));
      if (spec.validate)
        check(kind == AppKind::mis ? "mis_valid" : "mds_valid",
              (kind == AppKind::mis ? validate_mis(g, rep.set) : validate_mds(g, rep.set)).pass);
    }
  } else if (spec.algo.rfind("simulate-mp:", 0) == 0) {
    const MpAlgorithm alg = payload_for(spec.algo.substr(12), g.node_count());
    const MpConfig cfg{g.node_count(), g.max_degree(), 2.0};
    auto occ = w.occupancy();
    const bool dispersed = std::all_of(occ.begin(), occ.end(), [](int c) { return c == 1; });
    MpReport rep = dispersed ? simulate_mp(w, alg, cfg, budget) : simulate_mp_from_any_config(w, alg, cfg, budget);
    main = rep.run;
    add("rounds", std::to_string(main.rounds));
    add("termination", to_string(main.termination));
    add("memory_bits", std::to_string(peak(main)));
    add("election_rounds", std::to_string(rep.election.rounds));
    add("mp_rounds", std::to_string(alg.rounds));
    add("round_length", std::to_string(rep.round_length));
    add("sim_rounds", std::to_string(rep.sim_rounds));
    if (spec.validate && main.termination == Termination::completed) {
      check("mp_equal", rep.states == direct_mp_run(g, rep.node_ids, alg));
      check("mp_round_exact", rep.sim_rounds == alg.rounds * rep.round_length);
    }
  } else {
    throw std::invalid_argument("unknown algorithm '" + spec.algo + "'");
  }
  if (main.termination != Termination::completed) r.ok = false;
}

RunRecord run_seed(const ExperimentSpec& spec, const GraphPlan& plan, long seed) {
  RunRecord r;
  auto g = graph_for(plan, seed);
  const GraphStats st = graph_stats(*g);
  r.fields = {{"algo", spec.algo},
              {"graph", plan.label},
              {"placement", spec.placement},
              {"seed", std::to_string(seed)},
              {"n", std::to_string(st.n)},
              {"m", std::to_string(st.m)},
              {"max_degree", std::to_string(st.max_degree)}};
  std::ostringstream trace;
  TraceSink sink(trace, spec.trace_level);
  try {
    World w = init_world(g, placement_for(spec.placement, seed),
                         {IdPolicy::Kind::seeded_permutation, static_cast<std::uint64_t>(seed)});
    if (!spec.trace_path.empty()) w.set_trace(&sink);
    run_algorithm(spec, w, budget_for(spec, *g), r);
  } catch (const SimulationFault& e) {
    r.fields.emplace_back("termination", "fault");
    r.fields.emplace_back("error", no_spaces(e.what()));
    r.ok = false;
  }
  r.fields.emplace_back("ok", flag(r.ok));
  r.trace = trace.str();
  return r;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.seed_last < spec.seed_first) throw std::invalid_argument("empty seed range");
  if (spec.trace_level < 0 || spec.trace_level > 2) throw std::invalid_argument("trace level must be 0, 1 or 2");
  const GraphPlan plan = plan_graph(spec);
  placement_for(spec.placement, spec.seed_first);  // reject a bad placement before any thread starts
  const long count = spec.seed_last - spec.seed_first + 1;
  ExperimentResult out;
  out.records.resize(static_cast<std::size_t>(count));
  // Seeds are claimed dynamically but each record lands in its own slot.
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (long i = next++; i < count; i = next++) {
      try {
        out.records[static_cast<std::size_t>(i)] = run_seed(spec, plan, spec.seed_first + i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<long>(threads, count));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  for (const auto& r : out.records)
    if (!r.ok) out.exit_code = 1;
  return out;
}

int run_and_write(const ExperimentSpec& spec, std::ostream& echo) {
  ExperimentResult res = run_experiment(spec);
  auto open = [](const std::string& path) {
    std::ofstream f(path, std::ios::app);
    if (!f) throw std::invalid_argument("cannot write '" + path + "'");
    return f;
  };
  std::ostringstream metrics;
  for (const auto& r : res.records) metrics << format_record(r) << '\n';
  echo << metrics.str();
  if (!spec.metrics_path.empty()) open(spec.metrics_path) << metrics.str();
  if (!spec.trace_path.empty()) {
    auto f = open(spec.trace_path);
    for (const auto& r : res.records) f << "# seed=" << r.get("seed") << '\n' << r.trace;
  }
  if (!spec.mst_out.empty() && !res.records.empty() && res.records.front().ok && !res.records.front().mst.empty())
    open(spec.mst_out) << res.records.front().mst;
  return res.exit_code;
}

double bound_value(const std::string& x, long n, long m) {
  const double lg = n > 1 ? std::log2(static_cast<double>(n)) : 1.0;
  if (x == "m") return static_cast<double>(std::max(1L, m));
  if (x == "m_plus_nlogn") return static_cast<double>(m) + static_cast<double>(n) * lg;
  if (x == "nlogn_sq") return lg * lg;
  if (x == "nlogn") return static_cast<double>(n) * lg;
  throw std::invalid_argument("unknown bound shape '" + x + "'");
}

FitResult fit_bound(const std::vector<RunRecord>& records, const std::string& x, const std::string& y) {
  if (records.empty()) throw std::invalid_argument("no metrics records to fit");
  FitResult f{x, y, 0, 0, {}, 0};
  double sxy = 0, sxx = 0;
  std::map<int, double> by_size;
  for (const auto& r : records) {
    const std::string yv = r.get(y);
    if (yv.empty()) throw std::invalid_argument("record lacks field '" + y + "'");
    const long n = to_long(r.get("n"), "n"), m = to_long(r.get("m"), "m");
    const double xv = bound_value(x, n, m);
    const double yd = static_cast<double>(to_long(yv, y));
    sxy += xv * yd;
    sxx += xv * xv;
    const double ratio = yd / xv;
    f.max_ratio = std::max(f.max_ratio, ratio);
    auto [it, fresh] = by_size.emplace(static_cast<int>(n), ratio);
    if (!fresh) it->second = std::max(it->second, ratio);
  }
  f.constant = sxx > 0 ? sxy / sxx : 0;
  f.by_size.assign(by_size.begin(), by_size.end());
  const double first = f.by_size.front().second;
  f.growth = first > 0 ? f.by_size.back().second / first : 0;
  return f;
}

FitResult fit_bound_files(const std::vector<std::string>& paths, const std::string& x, const std::string& y) {
  std::vector<RunRecord> records;
  for (const auto& p : paths) {
    std::istringstream in(read_file(p));
    std::string line;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') records.push_back(parse_record(line));
  }
  return fit_bound(records, x, y);
}

}  // namespace agentnet
