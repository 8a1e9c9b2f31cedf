#include "tempqa/relevance/scorer.hpp"

#include <cmath>
#include <set>

#include "tempqa/question/tokenize.hpp"

namespace tempqa::relevance {

std::vector<double> RelevanceScorer::score_batch(std::string_view question,
                                                 const std::vector<std::string>& candidates) const {
  std::vector<double> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(score(question, c));
  return out;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& [k, v] : a) {
    na += v * v;
    auto it = b.find(k);
    if (it != b.end()) dot += v * it->second;
  }
  for (const auto& [k, v] : b) nb += v * v;
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

IdfBagEncoder::IdfBagEncoder(const std::vector<std::string>& corpus, const question::Lexicon& lexicon,
                             std::vector<TermExpansion> expansions)
    : lexicon_(&lexicon), expansions_(std::move(expansions)) {
  for (const auto& doc : corpus) {
    auto ts = terms(doc);
    std::set<std::string> uniq(ts.begin(), ts.end());
    for (const auto& t : uniq) ++df_[t];
    ++documents_;
  }
}

std::vector<std::string> IdfBagEncoder::terms(std::string_view text) const {
  const auto tokens = question::token_texts(text);
  std::vector<std::string> raw = tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (const auto& [phrase, extra] : expansions_) {
      if (phrase.empty() || i + phrase.size() > tokens.size()) continue;
      if (!std::equal(phrase.begin(), phrase.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) continue;
      raw.insert(raw.end(), extra.begin(), extra.end());
    }
  }
  std::vector<std::string> out;
  for (const auto& t : raw) {
    if (lexicon_->is_stopword(t)) continue;
    out.push_back(t);
    if (t.find('-') != std::string::npos || t.find('/') != std::string::npos) {
      auto ts = kg::parse_timestamp(t);
      if (ts && ts->resolution() != kg::Resolution::year) out.push_back(std::to_string(ts->year));
    }
  }
  return out;
}

double IdfBagEncoder::idf(const std::string& term) const {
  auto it = df_.find(term);
  const double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((static_cast<double>(documents_) + 1.0) / (df + 1.0)) + 1.0;
}

SparseVector IdfBagEncoder::encode(std::string_view text) const {
  SparseVector v;
  for (const auto& t : terms(text)) v[t] += 1.0;
  for (auto& [t, w] : v) w *= idf(t);
  return v;
}

double LexicalScorer::score(std::string_view question, std::string_view candidate) const {
  const double c = cosine(encoder_->encode(question), encoder_->encode(candidate));
  return std::clamp(c, 0.0, 1.0);
}

std::shared_ptr<const IdfBagEncoder> make_kg_encoder(const kg::KnowledgeGraph& kg, const question::Lexicon& lexicon) {
  std::vector<TermExpansion> expansions;
  for (const auto& [id, item] : kg.items()) {
    if (item.kind != kg::ItemKind::predicate) continue;
    const auto label = question::token_texts(item.label);
    for (const auto& alias : item.aliases) {
      auto phrase = question::token_texts(alias);
      if (phrase.empty() || phrase == label) continue;
      expansions.emplace_back(std::move(phrase), label);
    }
  }
  std::vector<std::string> corpus;
  corpus.reserve(kg.facts().size());
  for (const auto& [id, f] : kg.facts()) corpus.push_back(kg::verbalize_fact(f, kg));
  return std::make_shared<IdfBagEncoder>(corpus, lexicon, std::move(expansions));
}

}  // namespace tempqa::relevance
