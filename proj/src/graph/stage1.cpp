#include "tempqa/graph/stage1.hpp"

#include <algorithm>
#include <map>

#include <spdlog/spdlog.h>

#include "tempqa/question/tokenize.hpp"
#include "tempqa/relevance/selection.hpp"

namespace tempqa::graph {

void inject_connectivity(AnswerGraph& g, const std::vector<kg::ItemId>& question_entities, const std::string& question,
                         const kg::KnowledgeGraph& kg, const relevance::RelevanceScorer& scorer,
                         const relevance::TextEncoder& encoder) {
  std::vector<kg::ItemId> ents(question_entities);
  std::sort(ents.begin(), ents.end());
  ents.erase(std::unique(ents.begin(), ents.end()), ents.end());
  for (std::size_t i = 0; i < ents.size(); ++i) {
    for (std::size_t j = i + 1; j < ents.size(); ++j) {
      auto paths = kg::shortest_paths(ents[i], ents[j], kg);
      if (paths.empty()) {
        spdlog::debug("no KG path between {} and {}", ents[i], ents[j]);
        continue;
      }
      const auto& best = paths[relevance::best_path(question, paths, kg, encoder)];
      for (const auto& fid : best.facts) {
        if (g.has_fact(fid)) continue;
        const double s = relevance::score_fact(question, kg.fact(fid), kg, scorer);
        g.add_fact(kg.fact(fid), kg, 1.0 - s);
      }
    }
  }
}

std::vector<TerminalGroup> match_terminals(const question::QuestionAnalysis& qa, const AnswerGraph& g,
                                           const kg::KnowledgeGraph& kg, const question::Lexicon& lexicon,
                                           std::size_t max_groups) {
  std::vector<TerminalGroup> out;
  auto push = [&](TerminalGroup grp) {
    if (grp.members.empty() || out.size() >= max_groups) return;
    for (const auto& existing : out)
      if (existing.members == grp.members) return;
    out.push_back(std::move(grp));
  };
  for (const auto& e : qa.entities)
    if (auto idx = g.node_index(e); idx && g.nodes()[*idx].kind == kg::ItemKind::entity)
      push({kg.item(e).label, {*idx}});

  // surface token sequence -> non-entity nodes carrying it
  std::map<std::vector<std::string>, std::vector<int>> surfaces;
  std::size_t longest = 0;
  for (std::size_t v = 0; v < g.nodes().size(); ++v) {
    const auto& node = g.nodes()[v];
    if (node.kind == kg::ItemKind::entity) continue;
    const auto& item = kg.item(node.item);
    std::set<std::string> forms = item.aliases;
    forms.insert(item.label);
    forms.insert(kg::render_item(item));
    std::set<std::vector<std::string>> seen;
    for (const auto& f : forms) {
      auto toks = question::token_texts(f);
      if (toks.empty() || !seen.insert(toks).second) continue;
      surfaces[toks].push_back(static_cast<int>(v));
      longest = std::max(longest, toks.size());
    }
  }

  const auto& toks = qa.tokens;
  std::vector<char> blocked(toks.size(), 0);
  for (const auto& link : qa.entity_links)
    for (std::size_t i = link.begin; i < link.end && i < toks.size(); ++i) blocked[i] = 1;
  std::size_t i = 0;
  while (i < toks.size()) {
    bool matched = false;
    for (std::size_t len = std::min(longest, toks.size() - i); len >= 1 && !matched; --len) {
      bool free = true, content = false;
      for (std::size_t k = i; k < i + len; ++k) {
        free = free && !blocked[k];
        content = content || !lexicon.is_stopword(toks[k]);
      }
      if (!free || !content) continue;
      std::vector<std::string> span(toks.begin() + static_cast<std::ptrdiff_t>(i),
                                    toks.begin() + static_cast<std::ptrdiff_t>(i + len));
      auto it = surfaces.find(span);
      if (it == surfaces.end()) continue;
      std::string keyword;
      for (const auto& t : span) keyword += (keyword.empty() ? "" : " ") + t;
      push({keyword, it->second});
      i += len;
      matched = true;
    }
    if (!matched) ++i;
  }
  return out;
}

std::vector<ComponentTrees> gst_per_component(const AnswerGraph& g, const std::vector<TerminalGroup>& groups,
                                              std::size_t k) {
  int count = 0;
  const auto comp = g.components(&count);
  std::vector<ComponentTrees> out;
  WeightedGraph wg;
  wg.nodes = static_cast<int>(g.nodes().size());
  for (const auto& e : g.edges()) wg.edges.push_back({e.from, e.to, e.cost, e.id});
  for (int c = 0; c < count; ++c) {
    std::vector<std::vector<int>> local;
    for (const auto& grp : groups) {
      std::vector<int> members;
      for (int v : grp.members)
        if (comp[v] == c) members.push_back(v);
      if (!members.empty()) local.push_back(std::move(members));
    }
    if (local.empty()) continue;
    // restrict the solver to this component's edges
    WeightedGraph sub;
    sub.nodes = wg.nodes;
    std::vector<int> original;
    for (std::size_t i = 0; i < wg.edges.size(); ++i)
      if (comp[wg.edges[i].u] == c) {
        sub.edges.push_back(wg.edges[i]);
        original.push_back(static_cast<int>(i));
      }
    auto trees = steiner_topk(sub, local, k);
    for (auto& t : trees) {
      for (auto& e : t.edges) e = original[e];
      std::sort(t.edges.begin(), t.edges.end());
    }
    out.push_back({c, std::move(trees)});
  }
  return out;
}

const ComponentTrees* largest_component(const AnswerGraph& g, const std::vector<ComponentTrees>& per_component) {
  const auto comp = g.components();
  std::map<int, std::size_t> size;
  for (int c : comp) ++size[c];
  const ComponentTrees* best = nullptr;
  for (const auto& ct : per_component)
    if (!best || size[ct.component] > size[best->component]) best = &ct;
  return best;
}

AnswerGraph complete_gsts(const std::vector<const SteinerTree*>& trees, const AnswerGraph& g,
                          const kg::KnowledgeGraph& kg) {
  std::set<int> nodes;
  for (const auto* t : trees) nodes.insert(t->nodes.begin(), t->nodes.end());
  std::set<kg::FactId> facts;
  for (const auto& e : g.edges())
    if (nodes.count(e.from) || nodes.count(e.to)) facts.insert(e.fact);
  AnswerGraph out;
  for (const auto& fid : facts) out.add_fact(kg.fact(fid), kg, g.facts().at(fid));
  return out;
}

std::set<kg::ItemId> tree_items(const std::vector<const SteinerTree*>& trees, const AnswerGraph& g) {
  std::set<kg::ItemId> out;
  for (const auto* t : trees)
    for (int v : t->nodes)
      if (g.nodes()[v].kind != kg::ItemKind::predicate) out.insert(g.nodes()[v].item);
  return out;
}

void augment_temporal(AnswerGraph& g, const kg::KnowledgeGraph& kg, const std::string& question,
                      const relevance::RelevanceScorer& scorer, std::size_t n) {
  std::set<kg::FactId> candidates;
  for (const auto& e : g.items(kg::ItemKind::entity))
    for (const auto& fid : kg::temporal_facts_of(e, kg, 1))
      if (!g.has_fact(fid)) candidates.insert(fid);
  if (candidates.empty()) return;
  const auto top = relevance::select_temporal_facts(question, {candidates.begin(), candidates.end()}, kg, scorer, n);
  for (const auto& sf : top) g.add_fact(kg.fact(sf.fact), kg, sf.cost);
}

}  // namespace tempqa::graph
