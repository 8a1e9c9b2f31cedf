#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tempqa/graph/answer_graph.hpp"
#include "tempqa/kg/knowledge_graph.hpp"
#include "tempqa/question/analysis.hpp"
#include "tempqa/relevance/scorer.hpp"

namespace tempqa::pipeline {

inline constexpr std::size_t kStageCount = 7;
inline constexpr std::array<const char*, kStageCount> kStageNames = {
    "All KG facts of NERD entities", "Facts selected",
    "Shortest paths injected",       "GSTs on largest component",
    "Union of GSTs from all components", "Completed GSTs",
    "Temporal facts added"};

struct Stage1Options {
  std::size_t top_facts = 25;
  std::size_t top_gsts = 25;
  std::size_t top_temporal = 25;
  std::size_t max_terminal_groups = 8;
};

struct Stage1Result {
  question::QuestionAnalysis analysis;
  std::array<bool, kStageCount> gold_present{};
  std::array<std::size_t, kStageCount> candidates{};  // entities, literals, types and timestamps
  graph::AnswerGraph answer_graph;                     // after temporal augmentation
  std::set<std::string> tree_edges;                    // edge ids of every GST, ids of the pre-completion graph
  graph::AnswerGraph pre_completion;                   // graph the trees were computed on
};

// Runs Stage 1 for one question, recording gold presence and candidate
// counts after each step.
Stage1Result run_stage1(const std::string& question, const std::set<kg::ItemId>& gold, const kg::KnowledgeGraph& kg,
                        const question::QuestionAnalyzer& analyzer, const relevance::RelevanceScorer& scorer,
                        const relevance::TextEncoder& encoder, const Stage1Options& options);

struct StageRow {
  std::string name;
  double recall = 0;
  double mean_candidates = 0;
};

struct StageReport {
  std::vector<StageRow> rows;  // kStageNames order
  std::size_t questions = 0;
};

// Fraction of results with a gold item present per stage and mean candidate
// count; rows carry zeros when `results` is empty.
StageReport stage_recall(const std::vector<const Stage1Result*>& results);

}  // namespace tempqa::pipeline
