#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tempqa/kg/knowledge_graph.hpp"
#include "tempqa/question/lexicon.hpp"
#include "tempqa/question/tokenize.hpp"

namespace tempqa::question {

using CategoryBits = std::array<std::uint8_t, kCategoryCount>;  // EXPLICIT, IMPLICIT, TEMPORAL-ANSWER, ORDINAL
using SignalBits = std::array<std::uint8_t, kSignalCount>;      // BEFORE, AFTER, START, FINISH, ORDINAL, OVERLAP, NO-SIGNAL

struct EntityLink {
  std::size_t begin = 0;  // token span [begin, end)
  std::size_t end = 0;
  kg::ItemId item;

  bool operator==(const EntityLink&) const = default;
};

// Links question spans to KG items. Implementations return non-overlapping
// spans whose ids exist in the KG the detector was built for.
class EntityDetector {
 public:
  virtual ~EntityDetector() = default;
  virtual std::vector<EntityLink> detect(const std::vector<Token>& tokens) const = 0;
};

// Case-insensitive longest-match over entity labels and aliases. Ties on the
// same surface form go to the entity with more facts, then the smaller id.
// Aliases made only of stopwords are ignored.
class GazetteerDetector : public EntityDetector {
 public:
  GazetteerDetector(const kg::KnowledgeGraph& kg, const Lexicon& lexicon = Lexicon::builtin());
  std::vector<EntityLink> detect(const std::vector<Token>& tokens) const override;

 private:
  std::map<std::vector<std::string>, kg::ItemId> surface_;
  std::size_t longest_ = 0;
};

struct TemporalExpression {
  std::size_t begin = 0;  // token span
  std::size_t end = 0;
  kg::Timestamp value;
};

struct QuestionAnalysis {
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<kg::ItemId> entities;  // sorted, unique
  std::vector<EntityLink> entity_links;
  CategoryBits categories{};
  SignalBits signals{};
  std::vector<kg::Timestamp> explicit_expressions;
  std::vector<std::pair<std::size_t, int>> ordinal_mentions;  // (token index, rank; negative = from the end)

  bool operator==(const QuestionAnalysis&) const = default;
};

// Union of all detectors' links. Returns sorted unique ids; `links`, when
// given, receives every link in detector order.
std::vector<kg::ItemId> detect_entities(std::string_view q, const std::vector<const EntityDetector*>& detectors,
                                        std::vector<EntityLink>* links = nullptr);

// Years (1000-2099), numeric dates, "month day, year" / "day month year" /
// "month year" phrases, decades ("1990s", as the decade's first year) and
// event aliases.
std::vector<TemporalExpression> find_temporal_expressions(const std::vector<Token>& tokens, const Lexicon& lexicon);
std::vector<kg::Timestamp> extract_explicit_expressions(std::string_view q, const Lexicon& lexicon = Lexicon::builtin());

SignalBits tag_signals(std::string_view q, const Lexicon& lexicon = Lexicon::builtin());
CategoryBits tag_categories(std::string_view q, const Lexicon& lexicon = Lexicon::builtin());

// Ordinal words used as ordinals: preceded by a determiner/possessive, or
// followed by a content word (entries flagged needs_determiner require the
// former). Ordinals inside the scope of an implicit temporal expression
// ("during the ninth crusade") are part of the event name and are skipped.
std::vector<std::pair<std::size_t, int>> find_ordinals(const std::vector<Token>& tokens, const Lexicon& lexicon);

class QuestionAnalyzer {
 public:
  explicit QuestionAnalyzer(std::vector<const EntityDetector*> detectors, const Lexicon& lexicon = Lexicon::builtin())
      : detectors_(std::move(detectors)), lexicon_(&lexicon) {}

  QuestionAnalysis analyze(std::string_view q) const;
  const Lexicon& lexicon() const { return *lexicon_; }

 private:
  std::vector<const EntityDetector*> detectors_;
  const Lexicon* lexicon_;
};

}  // namespace tempqa::question
