#include "tempqa/rgcn/relational_graph.hpp"

#include <algorithm>

#include "tempqa/errors.hpp"

namespace tempqa::rgcn {

std::optional<int> RelationalGraph::node(const kg::ItemId& item) const {
  auto it = index.find(item);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

RelationalGraph build_relational_graph(const graph::AnswerGraph& g, const kg::KnowledgeGraph& kg) {
  if (g.empty()) throw ContractViolation("cannot build a relational graph from an empty answer graph");
  RelationalGraph rg;
  for (const auto& id : g.items()) {
    const auto& item = kg.item(id);
    rg.index.emplace(id, static_cast<int>(rg.nodes.size()));
    rg.nodes.push_back({id, item.kind, item.time});
  }
  rg.out_edges.resize(rg.nodes.size());
  rg.in_edges.resize(rg.nodes.size());
  rg.node_facts.resize(rg.nodes.size());

  auto add_edge = [&](int src, int dst, const std::string& label, const kg::FactId& fact,
                      std::vector<kg::Timestamp> times, bool inverse) {
    const int id = static_cast<int>(rg.edges.size());
    rg.edges.push_back({src, dst, inverse ? label + kInverseSuffix : label, fact, std::move(times), inverse});
    rg.out_edges[src].push_back(id);
    rg.in_edges[dst].push_back(id);
  };

  for (const auto& [fid, cost] : g.facts()) {
    const auto& f = kg.fact(fid);
    std::vector<kg::Timestamp> fact_times;
    auto note_time = [&](const kg::ItemId& obj) {
      const auto& item = kg.item(obj);
      if (item.kind == kg::ItemKind::timestamp) fact_times.push_back(*item.time);
    };
    note_time(f.object);
    for (const auto& q : f.qualifiers) note_time(q.object);

    const std::string pred = kg.item(f.predicate).label;
    const int s = rg.index.at(f.subject);
    TemporalFact tf{fid, {}, {}, fact_times, {}};
    auto link = [&](const kg::ItemId& obj, const std::string& label) {
      const int o = rg.index.at(obj);
      const auto& item = kg.item(obj);
      std::vector<kg::Timestamp> times = item.kind == kg::ItemKind::timestamp ? std::vector{*item.time} : fact_times;
      add_edge(s, o, label, fid, times, false);
      add_edge(o, s, label, fid, times, true);
      tf.relations.push_back(label);
      if (item.kind != kg::ItemKind::timestamp) tf.members.push_back(o);
    };
    tf.members.push_back(s);
    link(f.object, pred);
    for (const auto& q : f.qualifiers) link(q.object, pred + " / " + kg.item(q.predicate).label);

    if (!fact_times.empty()) {
      std::sort(tf.members.begin(), tf.members.end());
      tf.members.erase(std::unique(tf.members.begin(), tf.members.end()), tf.members.end());
      tf.earliest = *std::min_element(fact_times.begin(), fact_times.end());
      rg.temporal_facts.push_back(std::move(tf));
    }
  }

  for (int i = 0; i < static_cast<int>(rg.temporal_facts.size()); ++i) {
    const auto& tf = rg.temporal_facts[i];
    const auto& f = kg.fact(tf.id);
    std::vector<int> nodes = {rg.index.at(f.subject), rg.index.at(f.object)};
    for (const auto& q : f.qualifiers) nodes.push_back(rg.index.at(q.object));
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (int n : nodes) rg.node_facts[n].push_back(i);
  }
  for (auto& list : rg.node_facts) {
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      const auto& fa = rg.temporal_facts[a];
      const auto& fb = rg.temporal_facts[b];
      if (fa.earliest != fb.earliest) return fa.earliest < fb.earliest;
      return fa.id < fb.id;
    });
  }
  return rg;
}

std::vector<std::vector<int>> adjacency(const RelationalGraph& rg) {
  std::vector<std::vector<int>> out(rg.nodes.size());
  for (const auto& e : rg.edges) out[e.src].push_back(e.dst);
  return out;
}

}  // namespace tempqa::rgcn
