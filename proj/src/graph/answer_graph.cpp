#include "tempqa/graph/answer_graph.hpp"

#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "tempqa/errors.hpp"

namespace tempqa::graph {

std::string predicate_node_key(const kg::FactId& fact, int qualifier) {
  return qualifier < 0 ? fact + "#p" : fact + "#q" + std::to_string(qualifier);
}

int AnswerGraph::ensure_node(const std::string& key, const kg::ItemId& item, kg::ItemKind kind,
                             std::optional<kg::FactId> fact) {
  auto [it, inserted] = index_.try_emplace(key, static_cast<int>(nodes_.size()));
  if (inserted) nodes_.push_back({key, item, kind, std::move(fact)});
  return it->second;
}

bool AnswerGraph::add_fact(const kg::Fact& f, const kg::KnowledgeGraph& kg, double cost) {
  if (!(cost >= 0.0 && cost <= 1.0)) throw ContractViolation("edge cost outside [0,1]");
  if (!fact_cost_.emplace(f.id, cost).second) return false;
  auto item_node = [&](const kg::ItemId& id) { return ensure_node(id, id, kg.item(id).kind); };
  const int s = item_node(f.subject);
  const int p = ensure_node(predicate_node_key(f.id), f.predicate, kg::ItemKind::predicate, f.id);
  const int o = item_node(f.object);
  auto edge = [&](int pos, int from, int to) {
    edges_.push_back({f.id + ":" + std::to_string(pos), from, to, f.id, cost});
  };
  edge(0, s, p);
  edge(1, p, o);
  for (std::size_t i = 0; i < f.qualifiers.size(); ++i) {
    const auto& q = f.qualifiers[i];
    const int qp = ensure_node(predicate_node_key(f.id, static_cast<int>(i)), q.predicate, kg::ItemKind::predicate, f.id);
    const int qo = item_node(q.object);
    edge(2 + 2 * static_cast<int>(i), p, qp);
    edge(3 + 2 * static_cast<int>(i), qp, qo);
  }
  return true;
}

std::optional<int> AnswerGraph::node_index(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool AnswerGraph::has_item(const kg::ItemId& item) const {
  auto it = index_.find(item);
  return it != index_.end() && nodes_[it->second].kind != kg::ItemKind::predicate;
}

std::vector<kg::ItemId> AnswerGraph::items(std::optional<kg::ItemKind> kind) const {
  std::vector<kg::ItemId> out;
  for (const auto& n : nodes_)
    if (n.kind != kg::ItemKind::predicate && (!kind || n.kind == *kind)) out.push_back(n.item);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> AnswerGraph::components(int* count) const {
  std::vector<int> parent(nodes_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : edges_) parent[find(e.from)] = find(e.to);
  std::vector<int> comp(nodes_.size(), -1);
  std::map<int, int> root_to_comp;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    auto [it, inserted] = root_to_comp.try_emplace(find(static_cast<int>(v)), static_cast<int>(root_to_comp.size()));
    comp[v] = it->second;
  }
  if (count) *count = static_cast<int>(root_to_comp.size());
  return comp;
}

AnswerGraph induce_graph(const std::vector<relevance::ScoredFact>& scored, const kg::KnowledgeGraph& kg) {
  if (scored.empty()) throw ContractViolation("induce_graph needs at least one fact");
  AnswerGraph g;
  for (const auto& sf : scored) g.add_fact(kg.fact(sf.fact), kg, sf.cost);
  return g;
}

void dump_graph(const AnswerGraph& g, const kg::KnowledgeGraph& kg, std::ostream& out,
                const std::set<std::string>& tree_edges) {
  std::set<int> tree_nodes;
  for (const auto& e : g.edges())
    if (tree_edges.count(e.id)) {
      tree_nodes.insert(e.from);
      tree_nodes.insert(e.to);
    }
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    const auto& n = g.nodes()[i];
    nlohmann::ordered_json j;
    j["type"] = "node";
    j["key"] = n.key;
    j["item"] = n.item;
    j["kind"] = std::string(kg::to_string(n.kind));
    j["label"] = kg::render_item(kg.item(n.item));
    if (n.fact) j["fact"] = *n.fact;
    j["in_tree"] = tree_nodes.count(static_cast<int>(i)) > 0;
    out << j.dump() << '\n';
  }
  for (const auto& e : g.edges()) {
    nlohmann::ordered_json j;
    j["type"] = "edge";
    j["id"] = e.id;
    j["from"] = g.nodes()[e.from].key;
    j["to"] = g.nodes()[e.to].key;
    j["fact"] = e.fact;
    j["cost"] = e.cost;
    j["in_tree"] = tree_edges.count(e.id) > 0;
    out << j.dump() << '\n';
  }
}

}  // namespace tempqa::graph
