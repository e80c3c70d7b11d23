#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace typesql {

struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

struct Tokens {
  std::vector<std::string> tokens;
  std::vector<CharSpan> spans;
};

/// Lowercases and splits on whitespace. ASCII punctuation becomes its own
/// token, except '.' between digits and '-' between alphanumerics.
/// Throws "empty question" on blank input.
Tokens tokenize(std::string_view text);

/// Tokenizes and joins with single spaces; used to normalise column names,
/// gazetteer keys and cell values before matching. Blank input yields "".
std::string token_key(std::string_view text);

/// Joins tokens back into text without a space before punctuation.
std::string detokenize(const std::vector<std::string>& tokens);

/// Contiguous token span [start, start + length).
struct NGram {
  std::size_t start = 0;
  std::size_t length = 0;
  friend bool operator==(const NGram&, const NGram&) = default;
};

/// Every span with length in [min_len, min(max_len, token_count)], longest
/// first, then leftmost.
std::vector<NGram> extract_ngrams(std::size_t token_count, std::size_t min_len = 1,
                                  std::size_t max_len = 6);

}  // namespace typesql
