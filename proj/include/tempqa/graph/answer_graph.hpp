#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tempqa/kg/knowledge_graph.hpp"
#include "tempqa/relevance/selection.hpp"

namespace tempqa::graph {

// Entity, literal, type and timestamp nodes are shared by item id. Predicate
// nodes are per fact occurrence, keyed "<fact>#p" for the main predicate and
// "<fact>#q<i>" for the i-th qualifier predicate.
struct Node {
  std::string key;
  kg::ItemId item;
  kg::ItemKind kind = kg::ItemKind::entity;
  std::optional<kg::FactId> fact;  // predicate nodes only
};

// Edge ids are "<fact>:<pos>": pos 0 is subject->predicate, 1 predicate->object,
// 2+2i predicate->qualifier predicate i, 3+2i qualifier predicate i->qualifier
// object i.
struct Edge {
  std::string id;
  int from = 0;
  int to = 0;
  kg::FactId fact;
  double cost = 0;
};

class AnswerGraph {
 public:
  // Adds the fact's nodes and edges, all edges costing `cost`. No-op (false)
  // when the fact is already present. ContractViolation for cost outside [0,1].
  bool add_fact(const kg::Fact& f, const kg::KnowledgeGraph& kg, double cost);

  bool has_fact(const kg::FactId& id) const { return fact_cost_.count(id) > 0; }
  const std::map<kg::FactId, double>& facts() const { return fact_cost_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<int> node_index(const std::string& key) const;
  bool has_item(const kg::ItemId& item) const;
  bool empty() const { return nodes_.empty(); }

  // Sorted ids of non-predicate items.
  std::vector<kg::ItemId> items(std::optional<kg::ItemKind> kind = std::nullopt) const;

  // Connected component per node in the undirected view, numbered in order of
  // each component's first node.
  std::vector<int> components(int* count = nullptr) const;

 private:
  int ensure_node(const std::string& key, const kg::ItemId& item, kg::ItemKind kind,
                  std::optional<kg::FactId> fact = std::nullopt);

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::map<std::string, int> index_;
  std::map<kg::FactId, double> fact_cost_;
};

std::string predicate_node_key(const kg::FactId& fact, int qualifier = -1);

AnswerGraph induce_graph(const std::vector<relevance::ScoredFact>& scored, const kg::KnowledgeGraph& kg);

// JSON-lines dump, one record per node then per edge:
//   {"type":"node","key":..,"item":..,"kind":..,"label":..,"fact":..?,"in_tree":bool}
//   {"type":"edge","id":..,"from":<key>,"to":<key>,"fact":..,"cost":..,"in_tree":bool}
// `tree_edges` marks edges (and their endpoints) as tree members.
void dump_graph(const AnswerGraph& g, const kg::KnowledgeGraph& kg, std::ostream& out,
                const std::set<std::string>& tree_edges = {});

}  // namespace tempqa::graph
