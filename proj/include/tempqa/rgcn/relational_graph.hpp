#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempqa/graph/answer_graph.hpp"
#include "tempqa/kg/knowledge_graph.hpp"

namespace tempqa::rgcn {

inline constexpr const char* kInverseSuffix = " (inverse)";

struct RelNode {
  kg::ItemId item;
  kg::ItemKind kind = kg::ItemKind::entity;
  std::optional<kg::Timestamp> time;  // timestamp nodes
};

// Directed labelled edge. `times` holds the timestamp of the target (or,
// for inverse edges, the source) when that node is a timestamp, else every
// timestamp object of the source fact; empty for non-temporal facts.
struct RelEdge {
  int src = 0;
  int dst = 0;
  std::string relation;
  kg::FactId fact;
  std::vector<kg::Timestamp> times;
  bool inverse = false;
};

// A temporal fact of the graph as seen by the time-aware entity encoder.
struct TemporalFact {
  kg::FactId id;
  std::vector<int> members;             // non-timestamp nodes in subject/object/qualifier-object positions
  std::vector<std::string> relations;   // forward relation labels of the fact
  std::vector<kg::Timestamp> times;     // timestamp objects
  kg::Timestamp earliest;
};

// Nodes are the answer graph's non-predicate items in id order.
struct RelationalGraph {
  std::vector<RelNode> nodes;
  std::vector<RelEdge> edges;
  std::map<kg::ItemId, int> index;
  std::vector<std::vector<int>> out_edges;  // edge indices per source node
  std::vector<std::vector<int>> in_edges;   // edge indices per target node
  std::vector<TemporalFact> temporal_facts;
  // Per node: indices into temporal_facts in chronological order (earliest
  // timestamp, ties by fact id).
  std::vector<std::vector<int>> node_facts;

  std::optional<int> node(const kg::ItemId& item) const;
  std::size_t size() const { return nodes.size(); }
};

// Reifies every fact of `g`: subject -> object labelled with the predicate,
// subject -> qualifier object labelled "<predicate> / <qualifier predicate>",
// plus an inverse edge per edge with kInverseSuffix appended to the label.
RelationalGraph build_relational_graph(const graph::AnswerGraph& g, const kg::KnowledgeGraph& kg);

// Out-neighbour lists for PageRank (one entry per edge).
std::vector<std::vector<int>> adjacency(const RelationalGraph& rg);

}  // namespace tempqa::rgcn
