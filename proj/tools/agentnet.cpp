#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "agentnet/experiment.hpp"

namespace {

void parse_seeds(const std::string& text, agentnet::ExperimentSpec& spec) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      spec.seed_first = spec.seed_last = std::stol(text);
    } else {
      spec.seed_first = std::stol(text.substr(0, dots));
      spec.seed_last = std::stol(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--seeds", "expected A..B or A, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobile-agent leader election, MST and applications on anonymous port-labeled graphs"};
  agentnet::ExperimentSpec spec;
  std::string seeds = "1", validate = "on", fit, spec_file, dump_spec;
  std::vector<std::string> fit_inputs;

  auto* graph = app.add_option("--graph", spec.graph_file, "Graph file: header 'n m', then one 'u v port_u port_v weight' line per edge");
  auto* gen = app.add_option("--generate", spec.generate, "Generator KIND:N[:EXTRA][:SEED]");
  graph->excludes(gen);
  app.add_flag("--perturb-weights", spec.perturb_weights, "Break duplicate file weights by rank instead of rejecting");
  app.add_option("--placement", spec.placement, "dispersed | rooted:NODE | general[:SEED] | file:PATH");
  app.add_option("--algo", spec.algo, "leader | mst | gather | mis | mds | simulate-mp:<flood|bfs_label|max_id_leader>");
  app.add_option("--seeds", seeds, "Seed range A..B");
  app.add_option("--max-rounds", spec.max_rounds, "Round budget: N, or xM for M times the edge count");
  app.add_option("--trace", spec.trace_path, "Append a per-round trace here");
  app.add_option("--trace-level", spec.trace_level, "0 moves and actions, 1 adds writes, 2 adds snapshots")
      ->check(CLI::Range(0, 2));
  app.add_option("--metrics", spec.metrics_path, "Append one key=value record per seed here");
  app.add_option("--mst-out", spec.mst_out, "Write the first seed's MST edges here after a validated run");
  app.add_option("--validate", validate, "on | off")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--threads", spec.threads, "Worker threads; 0 for one per core");
  app.add_option("--spec", spec_file, "Load the experiment from a JSON spec; other flags are ignored");
  app.add_option("--dump-spec", dump_spec, "Write the effective spec as JSON and exit");
  app.add_option("--fit", fit, "Fit X:Y over metrics files, X in m|m_plus_nlogn|nlogn_sq|nlogn");
  app.add_option("inputs", fit_inputs, "Metrics files for --fit");

  try {
    app.parse(argc, argv);
    parse_seeds(seeds, spec);
    spec.validate = validate == "on";
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!fit.empty()) {
      auto colon = fit.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("--fit expects X:Y");
      if (fit_inputs.empty() && !spec.metrics_path.empty()) fit_inputs.push_back(spec.metrics_path);
      if (fit_inputs.empty()) throw std::invalid_argument("--fit needs metrics files");
      auto f = agentnet::fit_bound_files(fit_inputs, fit.substr(0, colon), fit.substr(colon + 1));
      std::cout << "x=" << f.x << " y=" << f.y << " constant=" << f.constant << " max_ratio=" << f.max_ratio
                << " growth=" << f.growth << '\n';
      for (const auto& [n, r] : f.by_size) std::cout << "n=" << n << " max_ratio=" << r << '\n';
      return 0;
    }
    if (!spec_file.empty()) {
      std::ifstream in(spec_file);
      if (!in) throw std::invalid_argument("cannot read '" + spec_file + "'");
      std::ostringstream s;
      s << in.rdbuf();
      spec = agentnet::spec_from_json(s.str());
    }
    if (!dump_spec.empty()) {
      std::ofstream out(dump_spec);
      if (!out) throw std::invalid_argument("cannot write '" + dump_spec + "'");
      out << agentnet::to_json(spec) << '\n';
      return 0;
    }
    return agentnet::run_and_write(spec, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
