#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tempqa/kg/knowledge_graph.hpp"
#include "tempqa/relevance/scorer.hpp"

namespace tempqa::relevance {

struct ScoredFact {
  kg::FactId fact;
  double score = 0;
  double cost = 1;  // always 1 - score

  static ScoredFact of(kg::FactId id, double score) { return {std::move(id), score, 1.0 - score}; }
  bool operator==(const ScoredFact&) const = default;
};

enum class Label { negative = 0, positive = 1 };

struct TrainingPair {
  std::string question;
  std::string candidate;
  Label label = Label::negative;

  bool operator==(const TrainingPair&) const = default;
};

// Distant supervision: facts containing a gold item are positives; for each
// positive, `neg_ratio` negatives are drawn without replacement from the
// remaining facts (all of them when fewer are available). Empty when no fact
// contains a gold item.
std::vector<TrainingPair> make_training_pairs(std::string_view q, const std::vector<kg::FactId>& facts,
                                              const kg::KnowledgeGraph& kg, const std::set<kg::ItemId>& gold,
                                              int neg_ratio, std::uint64_t seed);

double score_fact(std::string_view q, const kg::Fact& f, const kg::KnowledgeGraph& kg, const RelevanceScorer& scorer);

// Top-n by score, descending; equal scores in fact-id order.
std::vector<ScoredFact> select_relevant_facts(std::string_view q, const std::vector<kg::FactId>& facts,
                                              const kg::KnowledgeGraph& kg, const RelevanceScorer& scorer,
                                              std::size_t n = 25);

// As select_relevant_facts; ContractViolation when a fact is not temporal.
std::vector<ScoredFact> select_temporal_facts(std::string_view q, const std::vector<kg::FactId>& facts,
                                              const kg::KnowledgeGraph& kg, const RelevanceScorer& scorer,
                                              std::size_t n = 25);

// (1 + cos(encode(q), encode(verbalize_path(p)))) / 2; 0.5 for zero vectors.
double score_path(std::string_view q, const kg::Path& p, const kg::KnowledgeGraph& kg, const TextEncoder& encoder);

// Index of the highest-scoring path; the first one on ties. Paths nonempty.
std::size_t best_path(std::string_view q, const std::vector<kg::Path>& paths, const kg::KnowledgeGraph& kg,
                      const TextEncoder& encoder);

}  // namespace tempqa::relevance
