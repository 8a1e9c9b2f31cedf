#include "tempqa/relevance/selection.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "tempqa/errors.hpp"
#include "tempqa/numeric/rng.hpp"

namespace tempqa::relevance {
namespace {

bool contains_gold(const kg::Fact& f, const std::set<kg::ItemId>& gold) {
  for (const auto& id : f.items())
    if (gold.count(id)) return true;
  return false;
}

std::vector<ScoredFact> top_n(std::string_view q, const std::vector<kg::FactId>& facts, const kg::KnowledgeGraph& kg,
                              const RelevanceScorer& scorer, std::size_t n) {
  if (n < 1) throw ContractViolation("n must be at least 1");
  std::vector<kg::FactId> ids(facts);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<std::string> texts;
  texts.reserve(ids.size());
  for (const auto& id : ids) texts.push_back(kg::verbalize_fact(kg.fact(id), kg));
  const auto scores = scorer.score_batch(q, texts);
  std::vector<ScoredFact> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) out.push_back(ScoredFact::of(ids[i], scores[i]));
  auto better = [](const ScoredFact& a, const ScoredFact& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.fact < b.fact;
  };
  const std::size_t keep = std::min(n, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), better);
  out.resize(keep);
  return out;
}

}  // namespace

std::vector<TrainingPair> make_training_pairs(std::string_view q, const std::vector<kg::FactId>& facts,
                                              const kg::KnowledgeGraph& kg, const std::set<kg::ItemId>& gold,
                                              int neg_ratio, std::uint64_t seed) {
  if (neg_ratio < 1) throw ContractViolation("neg_ratio must be at least 1");
  if (facts.empty()) throw ContractViolation("facts must be nonempty");
  std::vector<kg::FactId> positives, negatives;
  for (const auto& id : facts) (contains_gold(kg.fact(id), gold) ? positives : negatives).push_back(id);
  std::vector<TrainingPair> out;
  if (positives.empty()) {
    spdlog::debug("no positive fact for question '{}'", q);
    return out;
  }
  numeric::Rng rng(seed);
  for (const auto& pos : positives) {
    out.push_back({std::string(q), kg::verbalize_fact(kg.fact(pos), kg), Label::positive});
    for (std::size_t i : rng.sample(negatives.size(), static_cast<std::size_t>(neg_ratio)))
      out.push_back({std::string(q), kg::verbalize_fact(kg.fact(negatives[i]), kg), Label::negative});
  }
  return out;
}

double score_fact(std::string_view q, const kg::Fact& f, const kg::KnowledgeGraph& kg, const RelevanceScorer& scorer) {
  return scorer.score(q, kg::verbalize_fact(f, kg));
}

std::vector<ScoredFact> select_relevant_facts(std::string_view q, const std::vector<kg::FactId>& facts,
                                              const kg::KnowledgeGraph& kg, const RelevanceScorer& scorer,
                                              std::size_t n) {
  return top_n(q, facts, kg, scorer, n);
}

std::vector<ScoredFact> select_temporal_facts(std::string_view q, const std::vector<kg::FactId>& facts,
                                              const kg::KnowledgeGraph& kg, const RelevanceScorer& scorer,
                                              std::size_t n) {
  for (const auto& id : facts)
    if (!kg.is_temporal(kg.fact(id))) throw ContractViolation("fact " + id + " is not temporal");
  return top_n(q, facts, kg, scorer, n);
}

double score_path(std::string_view q, const kg::Path& p, const kg::KnowledgeGraph& kg, const TextEncoder& encoder) {
  const auto a = encoder.encode(q);
  const auto b = encoder.encode(kg::verbalize_path(p, kg));
  return (1.0 + cosine(a, b)) / 2.0;
}

std::size_t best_path(std::string_view q, const std::vector<kg::Path>& paths, const kg::KnowledgeGraph& kg,
                      const TextEncoder& encoder) {
  if (paths.empty()) throw ContractViolation("no paths to choose from");
  std::size_t best = 0;
  double best_score = score_path(q, paths[0], kg, encoder);
  for (std::size_t i = 1; i < paths.size(); ++i) {
    const double s = score_path(q, paths[i], kg, encoder);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

}  // namespace tempqa::relevance
