#include "tempqa/question/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace tempqa::question {
namespace {

bool matches_at(const std::vector<Token>& tokens, std::size_t i, const std::vector<std::string>& phrase) {
  if (phrase.empty() || i + phrase.size() > tokens.size()) return false;
  for (std::size_t k = 0; k < phrase.size(); ++k)
    if (tokens[i + k].text != phrase[k]) return false;
  return true;
}

std::optional<int> as_number(const std::string& s) {
  if (s.empty() || s.size() > 4) return std::nullopt;
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<int> as_year(const std::string& s) {
  if (s.size() != 4) return std::nullopt;
  auto v = as_number(s);
  if (!v || *v < 1000 || *v > 2099) return std::nullopt;
  return v;
}

std::optional<int> as_day(const std::string& s) {
  if (s.size() > 2) return std::nullopt;
  auto v = as_number(s);
  if (!v || *v < 1 || *v > 31) return std::nullopt;
  return v;
}

struct FoundExpression {
  TemporalExpression expr;
  bool from_alias = false;
};

std::vector<FoundExpression> scan_expressions(const std::vector<Token>& tokens, const Lexicon& lex) {
  std::vector<FoundExpression> out;
  const std::size_t n = tokens.size();
  std::size_t i = 0;
  auto month_of = [&](std::size_t k) -> std::optional<int> {
    if (k >= n) return std::nullopt;
    auto it = lex.months.find(tokens[k].text);
    if (it == lex.months.end()) return std::nullopt;
    return it->second;
  };
  while (i < n) {
    // event aliases, longest first
    std::size_t best_len = 0;
    kg::Timestamp best_ts;
    for (const auto& [phrase, ts] : lex.event_aliases) {
      if (phrase.size() > best_len && matches_at(tokens, i, phrase)) {
        best_len = phrase.size();
        best_ts = ts;
      }
    }
    if (best_len) {
      out.push_back({{i, i + best_len, best_ts}, true});
      i += best_len;
      continue;
    }
    const std::string& t = tokens[i].text;
    if (t.find_first_of("-/") != std::string::npos) {
      auto ts = kg::parse_timestamp(t);
      if (ts && ts->resolution() != kg::Resolution::year && ts->year >= 1000) {
        out.push_back({{i, i + 1, *ts}, false});
        ++i;
        continue;
      }
    }
    if (auto m = month_of(i)) {
      if (i + 2 < n) {
        auto d = as_day(tokens[i + 1].text);
        auto y = as_year(tokens[i + 2].text);
        if (d && y) {
          kg::Timestamp ts = kg::Timestamp::of_day(*y, *m, *d);
          if (kg::is_valid(ts)) {
            out.push_back({{i, i + 3, ts}, false});
            i += 3;
            continue;
          }
        }
      }
      if (i + 1 < n) {
        if (auto y = as_year(tokens[i + 1].text)) {
          out.push_back({{i, i + 2, kg::Timestamp::of_month(*y, *m)}, false});
          i += 2;
          continue;
        }
      }
    }
    if (auto d = as_day(t); d && i + 2 < n) {
      auto m = month_of(i + 1);
      auto y = as_year(tokens[i + 2].text);
      if (m && y) {
        kg::Timestamp ts = kg::Timestamp::of_day(*y, *m, *d);
        if (kg::is_valid(ts)) {
          out.push_back({{i, i + 3, ts}, false});
          i += 3;
          continue;
        }
      }
    }
    if (t.size() == 5 && t.back() == 's') {
      if (auto y = as_year(t.substr(0, 4)); y && *y % 10 == 0) {
        out.push_back({{i, i + 1, kg::Timestamp::of_year(*y)}, false});
        ++i;
        continue;
      }
    }
    if (auto y = as_year(t)) {
      out.push_back({{i, i + 1, kg::Timestamp::of_year(*y)}, false});
      ++i;
      continue;
    }
    ++i;
  }
  return out;
}

struct SignalHit {
  std::size_t begin = 0;
  std::size_t end = 0;
  const SignalEntry* entry = nullptr;
};

struct Scan {
  std::vector<FoundExpression> expressions;
  std::vector<SignalHit> signals;
  std::vector<std::pair<std::size_t, std::size_t>> implicit_scopes;
  std::vector<std::pair<std::size_t, int>> ordinals;
};

Scan scan(const std::vector<Token>& tokens, const Lexicon& lex) {
  Scan s;
  s.expressions = scan_expressions(tokens, lex);
  const std::size_t n = tokens.size();
  std::vector<int> expr_start(n + 1, -1);
  for (std::size_t k = 0; k < s.expressions.size(); ++k) expr_start[s.expressions[k].expr.begin] = static_cast<int>(k);

  std::size_t i = 0;
  while (i < n) {
    const SignalEntry* best = nullptr;
    for (const auto& e : lex.signals) {
      if (!matches_at(tokens, i, e.phrase)) continue;
      if (e.not_initial && i == 0) continue;
      if (e.needs_time) {
        const std::size_t j = i + e.phrase.size();
        if (j >= n || expr_start[j] < 0 || s.expressions[expr_start[j]].from_alias) continue;
      }
      if (!best || e.phrase.size() > best->phrase.size()) best = &e;
    }
    if (best) {
      s.signals.push_back({i, i + best->phrase.size(), best});
      i += best->phrase.size();
    } else {
      ++i;
    }
  }

  // A connective followed by a noun phrase or clause opens an implicit
  // expression that runs to the next connective or the end of the question.
  std::vector<std::size_t> opens;
  for (const auto& hit : s.signals) {
    if (!hit.entry->connective) continue;
    const std::size_t j = hit.end;
    if (j >= n) continue;
    if (expr_start[j] >= 0 && !s.expressions[expr_start[j]].from_alias) continue;
    const std::string& next = tokens[j].text;
    const bool opens_phrase = lex.determiners.count(next) || !lex.is_stopword(next) || expr_start[j] >= 0;
    if (opens_phrase) opens.push_back(hit.begin);
  }
  for (std::size_t k = 0; k < opens.size(); ++k) {
    std::size_t begin = opens[k];
    std::size_t end = n;
    for (const auto& hit : s.signals)
      if (hit.entry->connective && hit.begin > begin) {
        end = hit.begin;
        break;
      }
    s.implicit_scopes.emplace_back(begin, end);
  }

  auto in_scope = [&](std::size_t idx) {
    return std::any_of(s.implicit_scopes.begin(), s.implicit_scopes.end(),
                       [&](const auto& sc) { return idx > sc.first && idx < sc.second; });
  };
  for (std::size_t k = 0; k < n; ++k) {
    auto it = lex.ordinals.find(tokens[k].text);
    if (it == lex.ordinals.end()) continue;
    const bool det_before = k > 0 && lex.determiners.count(tokens[k - 1].text);
    const bool content_after = k + 1 < n && !lex.is_stopword(tokens[k + 1].text) && !lex.ordinals.count(tokens[k + 1].text);
    const bool ok = it->second.needs_determiner ? det_before : (det_before || content_after);
    if (ok && !in_scope(k)) s.ordinals.emplace_back(k, it->second.rank);
  }
  return s;
}

SignalBits signal_bits(const Scan& s) {
  SignalBits bits{};
  for (const auto& hit : s.signals) bits[static_cast<int>(hit.entry->signal)] = 1;
  if (!s.ordinals.empty()) bits[static_cast<int>(Signal::ordinal)] = 1;
  const bool any = std::any_of(bits.begin(), bits.end(), [](auto b) { return b != 0; });
  if (!any) bits[static_cast<int>(Signal::no_signal)] = 1;
  return bits;
}

CategoryBits category_bits(const std::vector<Token>& tokens, const Scan& s, const Lexicon& lex) {
  CategoryBits bits{};
  const bool calendar = std::any_of(s.expressions.begin(), s.expressions.end(),
                                    [](const FoundExpression& e) { return !e.from_alias; });
  if (calendar) bits[static_cast<int>(Category::explicit_)] = 1;
  if (!s.implicit_scopes.empty()) bits[static_cast<int>(Category::implicit)] = 1;
  for (const auto& prefix : lex.temporal_answer_prefixes)
    if (matches_at(tokens, 0, prefix)) bits[static_cast<int>(Category::temporal_answer)] = 1;
  if (!s.ordinals.empty()) bits[static_cast<int>(Category::ordinal)] = 1;
  return bits;
}

}  // namespace

GazetteerDetector::GazetteerDetector(const kg::KnowledgeGraph& kg, const Lexicon& lexicon) {
  for (const auto& [id, item] : kg.items()) {
    if (item.kind != kg::ItemKind::entity) continue;
    std::set<std::string> surfaces = item.aliases;
    surfaces.insert(item.label);
    for (const auto& s : surfaces) {
      auto toks = token_texts(s);
      if (toks.empty()) continue;
      if (std::all_of(toks.begin(), toks.end(), [&](const std::string& t) { return lexicon.is_stopword(t); })) continue;
      auto [it, inserted] = surface_.try_emplace(toks, id);
      if (!inserted) {
        const auto& cur = it->second;
        const auto cur_n = kg.fact_count(cur), new_n = kg.fact_count(id);
        if (new_n > cur_n || (new_n == cur_n && id < cur)) it->second = id;
      }
      longest_ = std::max(longest_, toks.size());
    }
  }
}

std::vector<EntityLink> GazetteerDetector::detect(const std::vector<Token>& tokens) const {
  std::vector<EntityLink> out;
  std::size_t i = 0;
  std::vector<std::string> key;
  while (i < tokens.size()) {
    bool hit = false;
    for (std::size_t len = std::min(longest_, tokens.size() - i); len >= 1; --len) {
      key.clear();
      for (std::size_t k = 0; k < len; ++k) key.push_back(tokens[i + k].text);
      auto it = surface_.find(key);
      if (it != surface_.end()) {
        out.push_back({i, i + len, it->second});
        i += len;
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
  return out;
}

std::vector<kg::ItemId> detect_entities(std::string_view q, const std::vector<const EntityDetector*>& detectors,
                                        std::vector<EntityLink>* links) {
  const auto tokens = tokenize(q);
  std::set<kg::ItemId> ids;
  for (const auto* d : detectors) {
    for (auto& link : d->detect(tokens)) {
      ids.insert(link.item);
      if (links) links->push_back(std::move(link));
    }
  }
  return {ids.begin(), ids.end()};
}

std::vector<TemporalExpression> find_temporal_expressions(const std::vector<Token>& tokens, const Lexicon& lexicon) {
  std::vector<TemporalExpression> out;
  for (auto& f : scan_expressions(tokens, lexicon)) out.push_back(f.expr);
  return out;
}

std::vector<kg::Timestamp> extract_explicit_expressions(std::string_view q, const Lexicon& lexicon) {
  std::vector<kg::Timestamp> out;
  for (const auto& e : find_temporal_expressions(tokenize(q), lexicon)) out.push_back(e.value);
  return out;
}

std::vector<std::pair<std::size_t, int>> find_ordinals(const std::vector<Token>& tokens, const Lexicon& lexicon) {
  return scan(tokens, lexicon).ordinals;
}

SignalBits tag_signals(std::string_view q, const Lexicon& lexicon) { return signal_bits(scan(tokenize(q), lexicon)); }

CategoryBits tag_categories(std::string_view q, const Lexicon& lexicon) {
  const auto tokens = tokenize(q);
  return category_bits(tokens, scan(tokens, lexicon), lexicon);
}

QuestionAnalysis QuestionAnalyzer::analyze(std::string_view q) const {
  QuestionAnalysis qa;
  qa.raw = std::string(q);
  const auto tokens = tokenize(q);
  for (const auto& t : tokens) qa.tokens.push_back(t.text);
  std::set<kg::ItemId> ids;
  for (const auto* d : detectors_) {
    for (auto& link : d->detect(tokens)) {
      ids.insert(link.item);
      qa.entity_links.push_back(std::move(link));
    }
  }
  qa.entities.assign(ids.begin(), ids.end());
  const Scan s = scan(tokens, *lexicon_);
  qa.categories = category_bits(tokens, s, *lexicon_);
  qa.signals = signal_bits(s);
  for (const auto& e : s.expressions) qa.explicit_expressions.push_back(e.expr.value);
  qa.ordinal_mentions = s.ordinals;
  return qa;
}

}  // namespace tempqa::question
