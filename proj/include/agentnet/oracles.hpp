#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agentnet/mpsim.hpp"
#include "agentnet/runtime.hpp"

namespace agentnet {

// Centralized references. They see node labels and the whole world, which
// agents never do, and share nothing with the agent programs but data types.

struct ValidationReport {
  std::string check;
  bool pass = true;
  std::string witness;  // set whenever pass is false
};

struct MstResult {
  std::vector<Edge> edges;  // u < v, sorted
  Rational total;
};

// Sort plus union-find; throws std::invalid_argument on a disconnected graph.
MstResult kruskal_mst(const PortGraph& g);
// Minimum over every spanning tree by exhaustive enumeration; small graphs only.
MstResult exhaustive_mst(const PortGraph& g);
// Lightest edge with exactly one endpoint in `side`, if any.
std::optional<Edge> cut_minimum(const PortGraph& g, const std::vector<bool>& side);

ValidationReport validate_leader(const World& w);
ValidationReport validate_dispersion(const World& w);
ValidationReport validate_gathered(const World& w);
ValidationReport validate_mis(const PortGraph& g, const std::vector<NodeId>& set);
ValidationReport validate_mds(const PortGraph& g, const std::vector<NodeId>& set);
// Parent ports of the MST components form a forest whose child lists mirror
// the parent ports and whose members agree on their component rank.
ValidationReport validate_tree_pointers(const World& w);

// Brute force over all subsets; n <= 20.
bool brute_is_mis(const PortGraph& g, const std::vector<NodeId>& set);
bool brute_is_mds(const PortGraph& g, const std::vector<NodeId>& set);
std::vector<std::vector<NodeId>> all_maximal_independent_sets(const PortGraph& g);

std::vector<std::vector<int>> all_pairs_distances(const PortGraph& g);

// Synchronous message passing run directly on the graph, node v acting with
// node_ids[v]. Result is [t][node] for t = 0..alg.rounds.
std::vector<std::vector<MpState>> direct_mp_run(const PortGraph& g, const std::vector<AgentId>& node_ids,
                                                const MpAlgorithm& alg);

}  // namespace agentnet
