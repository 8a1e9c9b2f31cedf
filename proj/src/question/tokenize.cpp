#include "tempqa/question/tokenize.hpp"

#include <cctype>

namespace tempqa::question {
namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool is_joiner(char c) { return c == '-' || c == '/' || c == '.'; }

bool is_apostrophe(std::string_view text, std::size_t i) {
  if (text[i] == '\'') return true;
  // U+2019 RIGHT SINGLE QUOTATION MARK
  return i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
         static_cast<unsigned char>(text[i + 1]) == 0x80 && static_cast<unsigned char>(text[i + 2]) == 0x99;
}

std::size_t apostrophe_width(std::string_view text, std::size_t i) { return text[i] == '\'' ? 1 : 3; }

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_word_char(text[i])) {
      if (is_apostrophe(text, i) && !tokens.empty() && tokens.back().end == i) {
        const std::size_t w = apostrophe_width(text, i);
        const std::size_t after = i + w;
        const bool possessive = after < n && (text[after] == 's' || text[after] == 'S') &&
                                (after + 1 >= n || !is_word_char(text[after + 1]));
        if (possessive) {
          tokens.push_back({"'s", i, after + 1});
          i = after + 1;
          continue;
        }
        if (after < n && is_word_char(text[after])) {
          // contraction such as "don't": glue to the previous token
          std::size_t j = after;
          while (j < n && is_word_char(text[j])) ++j;
          tokens.back().text += "'" + to_lower(text.substr(after, j - after));
          tokens.back().end = j;
          i = j;
          continue;
        }
        i += w;
        continue;
      }
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n) {
      if (is_word_char(text[j])) {
        ++j;
      } else if (is_joiner(text[j]) && j + 1 < n && is_word_char(text[j + 1]) && j > i) {
        ++j;
      } else {
        break;
      }
    }
    tokens.push_back({to_lower(text.substr(i, j - i)), i, j});
    i = j;
  }
  return tokens;
}

std::vector<std::string> token_texts(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) out.push_back(std::move(t.text));
  return out;
}

}  // namespace tempqa::question
