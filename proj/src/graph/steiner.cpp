#include "tempqa/graph/steiner.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <tuple>

#include "tempqa/errors.hpp"

namespace tempqa::graph {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

double edge_sum(const WeightedGraph& g, const std::vector<int>& edges) {
  double s = 0;
  for (int e : edges) s += g.edges[e].cost;
  return s;
}

std::vector<int> nodes_of(const WeightedGraph& g, const std::vector<int>& edges) {
  std::set<int> s;
  for (int e : edges) {
    s.insert(g.edges[e].u);
    s.insert(g.edges[e].v);
  }
  return {s.begin(), s.end()};
}

// Minimum tree containing every forced edge, avoiding excluded edges, covering
// all groups, with at least one edge. `forced` must be a tree.
std::optional<std::vector<int>> solve(const WeightedGraph& g, const std::vector<std::vector<int>>& groups,
                                      const std::vector<int>& forced, const std::vector<char>& excluded) {
  const int n = g.nodes;
  std::vector<char> forced_node(static_cast<std::size_t>(n), 0), forced_edge(g.edges.size(), 0);
  int rep = -1;
  for (int e : forced) {
    forced_edge[e] = 1;
    for (int x : {g.edges[e].u, g.edges[e].v}) {
      forced_node[x] = 1;
      if (rep < 0 || x < rep) rep = x;
    }
  }
  auto map = [&](int v) { return forced_node[v] ? rep : v; };

  std::vector<std::uint32_t> node_mask(static_cast<std::size_t>(n), 0);
  int bits = 0;
  for (const auto& grp : groups) {
    if (std::any_of(grp.begin(), grp.end(), [&](int v) { return forced_node[v] != 0; })) continue;
    for (int v : grp) node_mask[map(v)] |= 1u << bits;
    ++bits;
  }
  const std::uint32_t extra = 1u << bits;
  const std::uint32_t full = (extra << 1) - 1;
  const std::uint32_t grow_bit = rep >= 0 ? 0 : extra;
  if (rep >= 0) node_mask[rep] |= extra;
  const std::size_t states = std::size_t{1} << (bits + 1);

  struct Adj {
    int to;
    int edge;
  };
  std::vector<std::vector<Adj>> adj(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (excluded[i] || forced_edge[i]) continue;
    const int a = map(g.edges[i].u), b = map(g.edges[i].v);
    if (a == b) continue;
    adj[a].push_back({b, static_cast<int>(i)});
    adj[b].push_back({a, static_cast<int>(i)});
  }

  struct Back {
    int kind = 0;  // 0 init, 1 grow, 2 merge
    int edge = -1;
    int prev = -1;
    std::uint32_t m1 = 0, m2 = 0;
  };
  std::vector<double> cost(static_cast<std::size_t>(n) * states, kInf);
  std::vector<Back> back(cost.size());
  std::vector<char> settled(cost.size(), 0);
  std::vector<std::vector<std::uint32_t>> settled_masks(static_cast<std::size_t>(n));
  auto at = [&](int v, std::uint32_t m) { return static_cast<std::size_t>(v) * states + m; };

  using Item = std::tuple<double, int, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (int v = 0; v < n; ++v) {
    if (forced_node[v] && v != rep) continue;
    cost[at(v, node_mask[v])] = 0;
    pq.emplace(0.0, v, node_mask[v]);
  }
  auto relax = [&](int v, std::uint32_t m, double c, const Back& b) {
    const auto i = at(v, m);
    if (settled[i] || !(c < cost[i])) return;
    cost[i] = c;
    back[i] = b;
    pq.emplace(c, v, m);
  };

  int goal_v = -1;
  std::uint32_t goal_m = 0;
  while (!pq.empty()) {
    auto [c, v, m] = pq.top();
    pq.pop();
    const auto i = at(v, m);
    if (settled[i] || c > cost[i]) continue;
    settled[i] = 1;
    if ((m & full) == full) {
      goal_v = v;
      goal_m = m;
      break;
    }
    for (const auto& a : adj[v])
      relax(a.to, m | node_mask[a.to] | grow_bit, c + g.edges[a.edge].cost, {1, a.edge, v, m, 0});
    for (std::uint32_t m2 : settled_masks[v]) {
      const std::uint32_t u = m | m2;
      if (u == m || u == m2) continue;
      relax(v, u, c + cost[at(v, m2)], {2, -1, v, m, m2});
    }
    settled_masks[v].push_back(m);
  }
  if (goal_v < 0) return std::nullopt;

  std::set<int> used;
  std::vector<std::pair<int, std::uint32_t>> stack{{goal_v, goal_m}};
  while (!stack.empty()) {
    auto [v, m] = stack.back();
    stack.pop_back();
    const Back& b = back[at(v, m)];
    if (b.kind == 1) {
      used.insert(b.edge);
      stack.emplace_back(b.prev, b.m1);
    } else if (b.kind == 2) {
      stack.emplace_back(v, b.m1);
      stack.emplace_back(v, b.m2);
    }
  }
  // The union of merged subtrees is connected with the optimal cost; a
  // spanning tree of it (forced edges first) is an optimal tree.
  std::vector<int> candidates(used.begin(), used.end());
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (g.edges[a].cost != g.edges[b].cost) return g.edges[a].cost < g.edges[b].cost;
    return a < b;
  });
  UnionFind uf(n);
  std::vector<int> tree;
  for (int e : forced) {
    uf.unite(g.edges[e].u, g.edges[e].v);
    tree.push_back(e);
  }
  for (int e : candidates)
    if (uf.unite(g.edges[e].u, g.edges[e].v)) tree.push_back(e);
  std::sort(tree.begin(), tree.end());
  return tree;
}

std::vector<int> covered_members(const std::vector<int>& nodes, const std::vector<std::vector<int>>& groups) {
  std::vector<int> out;
  for (const auto& grp : groups) {
    int best = -1;
    for (int v : grp)
      if (std::binary_search(nodes.begin(), nodes.end(), v) && (best < 0 || v < best)) best = v;
    out.push_back(best);
  }
  return out;
}

struct Candidate {
  double cost;
  std::vector<std::string> key;  // sorted edge ids
  std::vector<int> edges;
  std::vector<int> forced;
  std::vector<char> excluded;
};

struct CandidateOrder {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.key > b.key;
  }
};

Candidate make_candidate(const WeightedGraph& g, std::vector<int> edges, std::vector<int> forced,
                         std::vector<char> excluded) {
  Candidate c;
  c.cost = edge_sum(g, edges);
  for (int e : edges) c.key.push_back(g.edges[e].id);
  std::sort(c.key.begin(), c.key.end());
  c.edges = std::move(edges);
  c.forced = std::move(forced);
  c.excluded = std::move(excluded);
  return c;
}

}  // namespace

bool is_group_steiner_tree(const WeightedGraph& g, const std::vector<int>& edges,
                           const std::vector<std::vector<int>>& groups, int root) {
  std::vector<int> nodes;
  if (edges.empty()) {
    if (root < 0 || root >= g.nodes) return false;
    nodes = {root};
  } else {
    std::set<int> distinct(edges.begin(), edges.end());
    if (distinct.size() != edges.size()) return false;
    UnionFind uf(g.nodes);
    for (int e : edges)
      if (!uf.unite(g.edges[e].u, g.edges[e].v)) return false;
    nodes = nodes_of(g, edges);
    if (nodes.size() != edges.size() + 1) return false;
  }
  for (const auto& grp : groups)
    if (std::none_of(grp.begin(), grp.end(), [&](int v) { return std::binary_search(nodes.begin(), nodes.end(), v); }))
      return false;
  return true;
}

std::vector<SteinerTree> steiner_topk(const WeightedGraph& g, const std::vector<std::vector<int>>& groups,
                                      std::size_t k) {
  if (groups.empty()) throw ContractViolation("at least one terminal group is required");
  if (groups.size() > kMaxGroups) throw ContractViolation("too many terminal groups");
  for (const auto& e : g.edges)
    if (e.u < 0 || e.u >= g.nodes || e.v < 0 || e.v >= g.nodes || !(e.cost >= 0))
      throw ContractViolation("bad edge " + e.id);
  std::vector<SteinerTree> out;
  for (const auto& grp : groups) {
    if (grp.empty()) return out;
    for (int v : grp)
      if (v < 0 || v >= g.nodes) throw ContractViolation("group member out of range");
  }
  if (k == 0) return out;

  for (int v = 0; v < g.nodes; ++v) {
    const bool all = std::all_of(groups.begin(), groups.end(),
                                 [&](const auto& grp) { return std::find(grp.begin(), grp.end(), v) != grp.end(); });
    if (all) {
      out.push_back({{v}, {}, 0.0, covered_members({v}, groups)});
      break;
    }
  }

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> pq;
  const std::vector<char> none(g.edges.size(), 0);
  if (auto t = solve(g, groups, {}, none)) pq.push(make_candidate(g, *t, {}, none));

  while (!pq.empty() && out.size() < k) {
    Candidate c = pq.top();
    pq.pop();
    auto nodes = nodes_of(g, c.edges);
    out.push_back({nodes, c.edges, c.cost, covered_members(nodes, groups)});
    if (out.size() >= k) break;

    // Trees lacking some edge of this one: order the free edges so every
    // forced prefix stays connected.
    std::set<int> forced_set(c.forced.begin(), c.forced.end());
    std::vector<int> free_edges;
    for (int e : c.edges)
      if (!forced_set.count(e)) free_edges.push_back(e);
    std::set<int> reached;
    if (c.forced.empty()) {
      reached.insert(nodes.front());
    } else {
      for (int v : nodes_of(g, c.forced)) reached.insert(v);
    }
    std::vector<int> order;
    std::vector<char> taken(free_edges.size(), 0);
    while (order.size() < free_edges.size()) {
      for (std::size_t i = 0; i < free_edges.size(); ++i) {
        if (taken[i]) continue;
        const auto& e = g.edges[free_edges[i]];
        if (reached.count(e.u) || reached.count(e.v)) {
          taken[i] = 1;
          order.push_back(free_edges[i]);
          reached.insert(e.u);
          reached.insert(e.v);
          break;
        }
      }
    }
    std::vector<int> prefix = c.forced;
    for (int t : order) {
      auto excluded = c.excluded;
      excluded[t] = 1;
      if (auto sol = solve(g, groups, prefix, excluded)) pq.push(make_candidate(g, *sol, prefix, excluded));
      prefix.push_back(t);
    }

    // Strict supersets: this tree plus one adjacent edge, the earlier
    // adjacent edges excluded. Each child's optimum is the tree itself.
    auto excluded = c.excluded;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (excluded[i] || std::binary_search(c.edges.begin(), c.edges.end(), static_cast<int>(i))) continue;
      const bool in_u = std::binary_search(nodes.begin(), nodes.end(), g.edges[i].u);
      const bool in_v = std::binary_search(nodes.begin(), nodes.end(), g.edges[i].v);
      if (in_u == in_v) continue;
      auto edges = c.edges;
      edges.insert(std::upper_bound(edges.begin(), edges.end(), static_cast<int>(i)), static_cast<int>(i));
      pq.push(make_candidate(g, edges, edges, excluded));
      excluded[i] = 1;
    }
  }
  return out;
}

std::vector<SteinerTree> compute_gst_topk(const AnswerGraph& g, const std::vector<std::vector<int>>& groups,
                                          std::size_t k) {
  WeightedGraph wg;
  wg.nodes = static_cast<int>(g.nodes().size());
  for (const auto& e : g.edges()) wg.edges.push_back({e.from, e.to, e.cost, e.id});
  return steiner_topk(wg, groups, k);
}

}  // namespace tempqa::graph
