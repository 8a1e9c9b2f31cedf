#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tempqa/kg/knowledge_graph.hpp"
#include "tempqa/question/lexicon.hpp"

namespace tempqa::relevance {

// (question, candidate) -> score in [0,1]. Implementations must be
// deterministic for a fixed configuration and total over all inputs, except
// that remote implementations may throw ScoringError.
class RelevanceScorer {
 public:
  virtual ~RelevanceScorer() = default;
  virtual double score(std::string_view question, std::string_view candidate) const = 0;
  virtual std::vector<double> score_batch(std::string_view question, const std::vector<std::string>& candidates) const;
};

using SparseVector = std::map<std::string, double>;

class TextEncoder {
 public:
  virtual ~TextEncoder() = default;
  virtual SparseVector encode(std::string_view text) const = 0;
};

// 0 when either vector is zero.
double cosine(const SparseVector& a, const SparseVector& b);

// Maps a phrase to extra terms emitted wherever it occurs, e.g. a predicate
// alias "study" to its label "educated at".
using TermExpansion = std::pair<std::vector<std::string>, std::vector<std::string>>;

// tf-idf bag of non-stopword tokens. idf(t) = ln((N+1)/(df(t)+1)) + 1 over the
// corpus documents. Day- and month-resolution date tokens also emit their year.
class IdfBagEncoder : public TextEncoder {
 public:
  IdfBagEncoder(const std::vector<std::string>& corpus, const question::Lexicon& lexicon = question::Lexicon::builtin(),
                std::vector<TermExpansion> expansions = {});

  SparseVector encode(std::string_view text) const override;
  std::vector<std::string> terms(std::string_view text) const;
  double idf(const std::string& term) const;
  std::size_t documents() const { return documents_; }

 private:
  std::map<std::string, std::size_t> df_;
  std::size_t documents_ = 0;
  const question::Lexicon* lexicon_;
  std::vector<TermExpansion> expansions_;
};

// Cosine of tf-idf vectors. Symmetric, bounded in [0,1]; 0 without shared
// terms, 1 for texts with the same term distribution.
class LexicalScorer : public RelevanceScorer {
 public:
  explicit LexicalScorer(std::shared_ptr<const IdfBagEncoder> encoder) : encoder_(std::move(encoder)) {}
  double score(std::string_view question, std::string_view candidate) const override;
  const IdfBagEncoder& encoder() const { return *encoder_; }
  std::shared_ptr<const IdfBagEncoder> shared_encoder() const { return encoder_; }

 private:
  std::shared_ptr<const IdfBagEncoder> encoder_;
};

// Encoder over every verbalized fact of `kg`, with predicate aliases expanded
// to predicate labels.
std::shared_ptr<const IdfBagEncoder> make_kg_encoder(const kg::KnowledgeGraph& kg,
                                                     const question::Lexicon& lexicon = question::Lexicon::builtin());

}  // namespace tempqa::relevance
