#pragma once

#include <set>
#include <string>
#include <vector>

#include "tempqa/graph/answer_graph.hpp"
#include "tempqa/graph/steiner.hpp"
#include "tempqa/question/analysis.hpp"
#include "tempqa/relevance/scorer.hpp"

namespace tempqa::graph {

struct TerminalGroup {
  std::string keyword;
  std::vector<int> members;  // sorted node indices

  bool operator==(const TerminalGroup&) const = default;
};

// For every unordered pair of question entities, adds the facts of the
// best-scoring shortest KG path (by score_path against `encoder`). Facts not
// yet in the graph are scored with `scorer`. Disconnected pairs are skipped.
void inject_connectivity(AnswerGraph& g, const std::vector<kg::ItemId>& question_entities, const std::string& question,
                         const kg::KnowledgeGraph& kg, const relevance::RelevanceScorer& scorer,
                         const relevance::TextEncoder& encoder);

// One group per question entity present in the graph, then one per
// non-entity keyword span that equals (case-insensitively, token-wise) the
// label or an alias of some non-entity node. Spans covered by entity links
// and stopword-only spans are skipped; longest spans win. Groups with
// identical members are merged; at most `max_groups` are returned.
std::vector<TerminalGroup> match_terminals(const question::QuestionAnalysis& qa, const AnswerGraph& g,
                                           const kg::KnowledgeGraph& kg,
                                           const question::Lexicon& lexicon = question::Lexicon::builtin(),
                                           std::size_t max_groups = 8);

struct ComponentTrees {
  int component = 0;
  std::vector<SteinerTree> trees;
};

// Top-k trees in every connected component that holds a member of some
// group, with groups restricted to that component.
std::vector<ComponentTrees> gst_per_component(const AnswerGraph& g, const std::vector<TerminalGroup>& groups,
                                              std::size_t k);

// Component with the most nodes among `per_component` (smallest id on ties).
const ComponentTrees* largest_component(const AnswerGraph& g, const std::vector<ComponentTrees>& per_component);

// Graph made of the trees' facts: every fact of `g` with an item or
// predicate node in some tree, fully expanded, keeping its cost.
AnswerGraph complete_gsts(const std::vector<const SteinerTree*>& trees, const AnswerGraph& g,
                          const kg::KnowledgeGraph& kg);

// Non-predicate items on the trees' nodes.
std::set<kg::ItemId> tree_items(const std::vector<const SteinerTree*>& trees, const AnswerGraph& g);

// Adds the top-n (by relevance to `question`) temporal facts of the graph's
// entities that are not in the graph yet.
void augment_temporal(AnswerGraph& g, const kg::KnowledgeGraph& kg, const std::string& question,
                      const relevance::RelevanceScorer& scorer, std::size_t n = 25);

}  // namespace tempqa::graph
