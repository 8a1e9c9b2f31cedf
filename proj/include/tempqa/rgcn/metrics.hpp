#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tempqa::rgcn {

struct QuestionScore {
  double p_at_1 = 0;
  double reciprocal_rank = 0;  // 0 when no gold item is ranked
  double hit_at_5 = 0;
};

struct Metrics {
  double p_at_1 = 0;
  double mrr = 0;
  double hit_at_5 = 0;
  std::size_t questions = 0;
};

QuestionScore score_ranking(const std::vector<std::string>& ranking, const std::set<std::string>& gold);

// Averages over questions; nullopt when there are none. ContractViolation on
// a size mismatch.
std::optional<Metrics> evaluate(const std::vector<std::vector<std::string>>& rankings,
                                const std::vector<std::set<std::string>>& gold);

}  // namespace tempqa::rgcn
