#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tempqa/kg/timestamp.hpp"

namespace tempqa::question {

enum class Signal { before = 0, after, start, finish, ordinal, overlap, no_signal };
inline constexpr int kSignalCount = 7;

enum class Category { explicit_ = 0, implicit, temporal_answer, ordinal };
inline constexpr int kCategoryCount = 4;

struct SignalEntry {
  std::vector<std::string> phrase;  // tokenized
  Signal signal = Signal::overlap;
  bool connective = false;
  bool needs_time = false;
  bool not_initial = false;
};

struct OrdinalEntry {
  int rank = 0;
  bool needs_determiner = false;
};

// Versioned plain-text tables driving the taggers. See data/*.tsv.
struct Lexicon {
  std::vector<SignalEntry> signals;
  std::map<std::string, OrdinalEntry> ordinals;
  std::vector<std::vector<std::string>> temporal_answer_prefixes;
  std::vector<std::pair<std::vector<std::string>, kg::Timestamp>> event_aliases;
  std::map<std::string, int> months;
  std::set<std::string> determiners;
  std::set<std::string> stopwords;

  bool is_stopword(const std::string& token) const { return stopwords.count(token) > 0; }

  // Reads signals.tsv, ordinals.tsv, temporal_answer_prefixes.txt,
  // event_aliases.tsv, months.tsv, determiners.txt and stopwords.txt.
  // Throws ParseError / NotFoundError.
  static Lexicon load(const std::filesystem::path& dir);

  // Loads from the data directory the project was built with.
  static const Lexicon& builtin();
};

std::filesystem::path default_data_dir();

}  // namespace tempqa::question
