#pragma once

#include <string>
#include <vector>

#include "tempqa/graph/answer_graph.hpp"

namespace tempqa::graph {

// Undirected multigraph for the Steiner solver. Edge ids break ties.
struct WeightedEdge {
  int u = 0;
  int v = 0;
  double cost = 0;  // >= 0
  std::string id;
};

struct WeightedGraph {
  int nodes = 0;
  std::vector<WeightedEdge> edges;
};

struct SteinerTree {
  std::vector<int> nodes;  // sorted
  std::vector<int> edges;  // sorted edge indices
  double cost = 0;
  std::vector<int> covered;  // per group, the smallest member in the tree

  bool operator==(const SteinerTree&) const = default;
};

inline constexpr int kMaxGroups = 16;

// The k cheapest trees (edge subsets that are connected and acyclic) touching
// at least one member of every group, in non-decreasing cost order, distinct
// as edge sets. A zero-edge tree is reported first when one node covers all
// groups. Empty when no tree exists. Costs are exact: the first tree is a
// minimum group Steiner tree.
//
// The minimum under "forced edges I, excluded edges E" comes from a
// dynamic program over (node, covered-group set) states with grow and merge
// transitions, run on the graph with I contracted to one node. Lawler-style
// partitioning of the solution space turns this into exact top-k
// enumeration.
std::vector<SteinerTree> steiner_topk(const WeightedGraph& g, const std::vector<std::vector<int>>& groups,
                                      std::size_t k);

// Same on an answer graph; tree nodes/edges index g.nodes()/g.edges().
std::vector<SteinerTree> compute_gst_topk(const AnswerGraph& g, const std::vector<std::vector<int>>& groups,
                                          std::size_t k = 25);

// True iff the edge set is a tree covering every group. `nodes` receives its
// node set (the single `root` when the edge set is empty).
bool is_group_steiner_tree(const WeightedGraph& g, const std::vector<int>& edges,
                           const std::vector<std::vector<int>>& groups, int root = -1);

}  // namespace tempqa::graph
