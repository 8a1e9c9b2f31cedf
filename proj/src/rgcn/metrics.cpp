#include "tempqa/rgcn/metrics.hpp"

#include "tempqa/errors.hpp"

namespace tempqa::rgcn {

QuestionScore score_ranking(const std::vector<std::string>& ranking, const std::set<std::string>& gold) {
  QuestionScore s;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (!gold.count(ranking[i])) continue;
    s.reciprocal_rank = 1.0 / static_cast<double>(i + 1);
    s.p_at_1 = i == 0 ? 1.0 : 0.0;
    s.hit_at_5 = i < 5 ? 1.0 : 0.0;
    break;
  }
  return s;
}

std::optional<Metrics> evaluate(const std::vector<std::vector<std::string>>& rankings,
                                const std::vector<std::set<std::string>>& gold) {
  if (rankings.size() != gold.size()) throw ContractViolation("rankings and gold sets differ in size");
  if (rankings.empty()) return std::nullopt;
  Metrics m;
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    const auto s = score_ranking(rankings[i], gold[i]);
    m.p_at_1 += s.p_at_1;
    m.mrr += s.reciprocal_rank;
    m.hit_at_5 += s.hit_at_5;
  }
  m.questions = rankings.size();
  const double n = static_cast<double>(m.questions);
  m.p_at_1 /= n;
  m.mrr /= n;
  m.hit_at_5 /= n;
  return m;
}

}  // namespace tempqa::rgcn
