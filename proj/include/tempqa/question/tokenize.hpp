#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tempqa::question {

struct Token {
  std::string text;  // lowercased
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
};

// Lowercasing word tokenizer. Alphanumeric runs form tokens; '-', '/' and '.'
// are kept when they join two alphanumerics ("9/11", "20-01-2009"); a
// possessive "'s" becomes its own token; other punctuation separates.
std::vector<Token> tokenize(std::string_view text);

std::vector<std::string> token_texts(std::string_view text);

std::string to_lower(std::string_view text);

}  // namespace tempqa::question
