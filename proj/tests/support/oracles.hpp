#pragma once

// Brute-force reference implementations used by unit and acceptance tests.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "tempqa/graph/steiner.hpp"
#include "tempqa/kg/knowledge_graph.hpp"
#include "tempqa/numeric/rng.hpp"

namespace tempqa::testing {

struct OracleTree {
  double cost;
  std::vector<int> edges;
};

// Every edge subset that is a tree touching all groups, cheapest first. The
// empty edge set counts once when a single node covers every group.
inline std::vector<OracleTree> all_group_steiner_trees(const graph::WeightedGraph& g,
                                                       const std::vector<std::vector<int>>& groups) {
  std::vector<OracleTree> out;
  for (int v = 0; v < g.nodes; ++v) {
    bool all = true;
    for (const auto& grp : groups) all = all && std::count(grp.begin(), grp.end(), v) > 0;
    if (all) {
      out.push_back({0.0, {}});
      break;
    }
  }
  const int m = static_cast<int>(g.edges.size());
  std::vector<int> chosen;
  std::function<void(int, std::vector<int>)> rec = [&](int i, std::vector<int> comp) {
    if (i == m) {
      if (chosen.empty()) return;
      std::set<int> nodes;
      for (int e : chosen) {
        nodes.insert(g.edges[e].u);
        nodes.insert(g.edges[e].v);
      }
      if (nodes.size() != chosen.size() + 1) return;  // a forest, not a tree
      for (const auto& grp : groups) {
        bool hit = false;
        for (int v : grp) hit = hit || nodes.count(v);
        if (!hit) return;
      }
      double cost = 0;
      for (int e : chosen) cost += g.edges[e].cost;
      out.push_back({cost, chosen});
      return;
    }
    rec(i + 1, comp);
    const int a = comp[g.edges[i].u], b = comp[g.edges[i].v];
    if (a == b) return;
    for (auto& c : comp)
      if (c == a) c = b;
    chosen.push_back(i);
    rec(i + 1, comp);
    chosen.pop_back();
  };
  std::vector<int> comp(static_cast<std::size_t>(g.nodes));
  std::iota(comp.begin(), comp.end(), 0);
  rec(0, comp);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.cost < b.cost; });
  return out;
}

struct SteinerInstance {
  graph::WeightedGraph graph;
  std::vector<std::vector<int>> groups;
};

// Connected random multigraph: random spanning tree plus extra edges.
inline SteinerInstance random_steiner_instance(numeric::Rng& rng, int max_nodes = 12, int max_edges = 20,
                                               int max_groups = 3, int max_members = 3) {
  SteinerInstance inst;
  const int n = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_nodes - 1)));
  inst.graph.nodes = n;
  int id = 0;
  auto add = [&](int u, int v) {
    inst.graph.edges.push_back({u, v, rng.uniform01(), "e" + std::to_string(id++)});
  };
  for (int v = 1; v < n; ++v) add(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(v))), v);
  const int extra = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_edges - (n - 1) + 1)));
  for (int i = 0; i < extra; ++i) {
    int u = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    if (u == v) v = (v + 1) % n;
    add(u, v);
  }
  const int groups = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_groups)));
  for (int gi = 0; gi < groups; ++gi) {
    const int members = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_members)));
    std::set<int> s;
    for (int j = 0; j < members; ++j) s.insert(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n))));
    inst.groups.emplace_back(s.begin(), s.end());
  }
  return inst;
}

// All minimum-length fact paths by explicit enumeration of item walks:
// iterative deepening over sequences (item, fact, item, fact, ...) whose
// junction items are entities.
inline std::set<std::vector<kg::FactId>> brute_force_shortest_paths(const std::string& a, const std::string& b,
                                                                    const kg::KnowledgeGraph& g,
                                                                    std::size_t max_len = 8) {
  std::set<std::vector<kg::FactId>> found;
  if (a == b) return found;
  std::vector<kg::FactId> seq;
  std::function<void(const std::string&, std::size_t)> dfs = [&](const std::string& at, std::size_t left) {
    for (const auto& [fid, f] : g.facts()) {
      auto items = f.items();
      if (std::find(items.begin(), items.end(), at) == items.end()) continue;
      seq.push_back(fid);
      if (left == 1) {
        if (std::find(items.begin(), items.end(), b) != items.end()) found.insert(seq);
      } else {
        std::set<std::string> next(items.begin(), items.end());
        for (const auto& y : next)
          if (y != at && g.item(y).kind == kg::ItemKind::entity) dfs(y, left - 1);
      }
      seq.pop_back();
    }
  };
  for (std::size_t len = 1; len <= max_len && found.empty(); ++len) dfs(a, len);
  return found;
}

// Random KG with at most `max_facts` facts over a small entity pool, some
// with qualifiers and timestamps.
inline kg::KnowledgeGraph random_kg(numeric::Rng& rng, int max_facts = 50) {
  kg::KnowledgeGraph g;
  const int entities = 4 + static_cast<int>(rng.uniform_index(20));
  for (int i = 0; i < entities; ++i)
    g.add_item({"e" + std::to_string(i), "entity " + std::to_string(i), kg::ItemKind::entity, {}, std::nullopt});
  for (int i = 0; i < 4; ++i)
    g.add_item({"p" + std::to_string(i), "pred " + std::to_string(i), kg::ItemKind::predicate, {}, std::nullopt});
  for (int i = 0; i < 5; ++i) {
    auto ts = kg::Timestamp::of_year(1990 + i);
    g.add_item({"t" + std::to_string(i), kg::to_display(ts), kg::ItemKind::timestamp, {}, ts});
  }
  const int facts = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_facts)));
  auto ent = [&] { return "e" + std::to_string(rng.uniform_index(static_cast<std::uint64_t>(entities))); };
  auto pred = [&] { return "p" + std::to_string(rng.uniform_index(4)); };
  for (int i = 0; i < facts; ++i) {
    kg::Fact f{"f" + std::to_string(i), ent(), pred(), rng.bernoulli(0.2) ? "t" + std::to_string(rng.uniform_index(5)) : ent(), {}};
    const int quals = static_cast<int>(rng.uniform_index(3));
    for (int q = 0; q < quals; ++q)
      f.qualifiers.push_back({pred(), rng.bernoulli(0.5) ? "t" + std::to_string(rng.uniform_index(5)) : ent()});
    g.add_fact(f);
  }
  return g;
}

}  // namespace tempqa::testing
