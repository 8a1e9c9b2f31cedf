#include "tempqa/pipeline/stage1.hpp"

#include <algorithm>

#include "tempqa/graph/stage1.hpp"
#include "tempqa/relevance/selection.hpp"

namespace tempqa::pipeline {
namespace {

using Items = std::set<kg::ItemId>;

Items fact_items(const std::vector<kg::FactId>& facts, const kg::KnowledgeGraph& kg) {
  Items out;
  for (const auto& fid : facts)
    for (const auto& id : kg.fact(fid).items())
      if (kg.item(id).kind != kg::ItemKind::predicate) out.insert(id);
  return out;
}

Items graph_items(const graph::AnswerGraph& g) {
  auto v = g.items();
  return {v.begin(), v.end()};
}

bool any_gold(const Items& items, const std::set<kg::ItemId>& gold) {
  return std::any_of(gold.begin(), gold.end(), [&](const kg::ItemId& a) { return items.count(a) > 0; });
}

}  // namespace

Stage1Result run_stage1(const std::string& question, const std::set<kg::ItemId>& gold, const kg::KnowledgeGraph& kg,
                        const question::QuestionAnalyzer& analyzer, const relevance::RelevanceScorer& scorer,
                        const relevance::TextEncoder& encoder, const Stage1Options& options) {
  Stage1Result r;
  r.analysis = analyzer.analyze(question);
  auto record = [&](std::size_t stage, const Items& items) {
    r.gold_present[stage] = any_gold(items, gold);
    r.candidates[stage] = items.size();
  };

  std::set<kg::FactId> nerd_set;
  for (const auto& e : r.analysis.entities)
    for (const auto& f : kg.facts_of(e)) nerd_set.insert(f);
  const std::vector<kg::FactId> nerd_facts(nerd_set.begin(), nerd_set.end());
  record(0, fact_items(nerd_facts, kg));

  const auto selected = relevance::select_relevant_facts(question, nerd_facts, kg, scorer, options.top_facts);
  graph::AnswerGraph g = selected.empty() ? graph::AnswerGraph{} : graph::induce_graph(selected, kg);
  record(1, graph_items(g));

  graph::inject_connectivity(g, r.analysis.entities, question, kg, scorer, encoder);
  record(2, graph_items(g));

  const auto groups = graph::match_terminals(r.analysis, g, kg, analyzer.lexicon(), options.max_terminal_groups);
  const auto per_component = graph::gst_per_component(g, groups, options.top_gsts);
  std::vector<const graph::SteinerTree*> largest_trees;
  if (const auto* largest = graph::largest_component(g, per_component))
    for (const auto& t : largest->trees) largest_trees.push_back(&t);
  record(3, graph::tree_items(largest_trees, g));

  std::vector<const graph::SteinerTree*> all_trees;
  for (const auto& c : per_component)
    for (const auto& t : c.trees) all_trees.push_back(&t);
  record(4, graph::tree_items(all_trees, g));
  for (const auto* t : all_trees)
    for (int e : t->edges) r.tree_edges.insert(g.edges()[e].id);

  graph::AnswerGraph completed = graph::complete_gsts(all_trees, g, kg);
  record(5, graph_items(completed));

  graph::augment_temporal(completed, kg, question, scorer, options.top_temporal);
  record(6, graph_items(completed));

  r.answer_graph = std::move(completed);
  r.pre_completion = std::move(g);
  return r;
}

StageReport stage_recall(const std::vector<const Stage1Result*>& results) {
  StageReport rep;
  rep.questions = results.size();
  for (std::size_t s = 0; s < kStageCount; ++s) {
    StageRow row{kStageNames[s], 0, 0};
    for (const auto* r : results) {
      row.recall += r->gold_present[s] ? 1.0 : 0.0;
      row.mean_candidates += static_cast<double>(r->candidates[s]);
    }
    if (!results.empty()) {
      row.recall /= static_cast<double>(results.size());
      row.mean_candidates /= static_cast<double>(results.size());
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace tempqa::pipeline
