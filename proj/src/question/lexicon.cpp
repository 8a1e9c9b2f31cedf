#include "tempqa/question/lexicon.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tempqa/errors.hpp"
#include "tempqa/question/tokenize.hpp"

#ifndef TEMPQA_DATA_DIR
#define TEMPQA_DATA_DIR "data"
#endif

namespace tempqa::question {
namespace {

// Non-comment, non-blank lines split on tabs, with their line numbers.
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open lexicon file " + path.string());
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    rows.emplace_back(n, std::move(cols));
  }
  return rows;
}

Signal parse_signal(const std::string& s, std::size_t line) {
  if (s == "BEFORE") return Signal::before;
  if (s == "AFTER") return Signal::after;
  if (s == "START") return Signal::start;
  if (s == "FINISH") return Signal::finish;
  if (s == "OVERLAP") return Signal::overlap;
  throw ParseError("unknown signal class '" + s + "'", line);
}

}  // namespace

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("TEMPQA_DATA_DIR")) return env;
  return TEMPQA_DATA_DIR;
}

Lexicon Lexicon::load(const std::filesystem::path& dir) {
  Lexicon lex;
  for (auto& [line, cols] : read_table(dir / "signals.tsv")) {
    if (cols.size() < 2) throw ParseError("signals.tsv needs phrase and class", line);
    SignalEntry e;
    e.phrase = token_texts(cols[0]);
    e.signal = parse_signal(cols[1], line);
    if (cols.size() > 2) {
      std::stringstream flags(cols[2]);
      std::string flag;
      while (std::getline(flags, flag, ',')) {
        if (flag == "connective")
          e.connective = true;
        else if (flag == "needs_time")
          e.needs_time = true;
        else if (flag == "not_initial")
          e.not_initial = true;
        else if (!flag.empty())
          throw ParseError("unknown signal flag '" + flag + "'", line);
      }
    }
    lex.signals.push_back(std::move(e));
  }
  for (auto& [line, cols] : read_table(dir / "ordinals.tsv")) {
    if (cols.size() < 2) throw ParseError("ordinals.tsv needs word and rank", line);
    OrdinalEntry e;
    e.rank = std::stoi(cols[1]);
    e.needs_determiner = cols.size() > 2 && cols[2] == "needs_determiner";
    lex.ordinals[to_lower(cols[0])] = e;
  }
  for (auto& [line, cols] : read_table(dir / "temporal_answer_prefixes.txt"))
    lex.temporal_answer_prefixes.push_back(token_texts(cols.at(0)));
  for (auto& [line, cols] : read_table(dir / "event_aliases.tsv")) {
    if (cols.size() < 2) throw ParseError("event_aliases.tsv needs phrase and date", line);
    auto ts = kg::parse_timestamp(cols[1]);
    if (!ts) throw ParseError("bad date '" + cols[1] + "'", line);
    lex.event_aliases.emplace_back(token_texts(cols[0]), *ts);
  }
  for (auto& [line, cols] : read_table(dir / "months.tsv")) {
    if (cols.size() < 2) throw ParseError("months.tsv needs name and number", line);
    lex.months[to_lower(cols[0])] = std::stoi(cols[1]);
  }
  for (auto& [line, cols] : read_table(dir / "determiners.txt")) lex.determiners.insert(to_lower(cols.at(0)));
  for (auto& [line, cols] : read_table(dir / "stopwords.txt")) lex.stopwords.insert(to_lower(cols.at(0)));
  return lex;
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = load(default_data_dir());
  return lex;
}

}  // namespace tempqa::question
