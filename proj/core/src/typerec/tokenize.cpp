#include "typesql/typerec/tokenize.hpp"

#include <algorithm>
#include <cctype>

#include "typesql/numkernel/error.hpp"

namespace typesql {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_word(unsigned char c) { return c >= 0x80 || std::isalnum(c) != 0; }
bool is_digit(unsigned char c) { return std::isdigit(c) != 0; }

Tokens split(std::string_view text) {
  Tokens out;
  std::string cur;
  std::size_t cur_begin = 0;
  auto flush = [&](std::size_t end) {
    if (cur.empty()) return;
    out.tokens.push_back(std::move(cur));
    out.spans.push_back({cur_begin, end});
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      flush(i);
      continue;
    }
    if (is_word(c)) {
      if (cur.empty()) cur_begin = i;
      cur.push_back(static_cast<char>(std::tolower(c)));
      continue;
    }
    const bool has_next = i + 1 < text.size();
    const auto next = has_next ? static_cast<unsigned char>(text[i + 1]) : 0;
    const auto prev = cur.empty() ? 0 : static_cast<unsigned char>(cur.back());
    const bool keep = ((c == '.' || c == '/') && is_digit(prev) && has_next && is_digit(next)) ||
                      (c == '-' && !cur.empty() && is_word(prev) && has_next && is_word(next));
    if (keep) {
      cur.push_back(static_cast<char>(c));
      continue;
    }
    flush(i);
    out.tokens.emplace_back(1, static_cast<char>(c));
    out.spans.push_back({i, i + 1});
  }
  flush(text.size());
  return out;
}

}  // namespace

Tokens tokenize(std::string_view text) {
  Tokens out = split(text);
  if (out.tokens.empty()) throw Error("empty question");
  return out;
}

std::string token_key(std::string_view text) {
  const Tokens t = split(text);
  std::string key;
  for (const auto& tok : t.tokens) {
    if (!key.empty()) key.push_back(' ');
    key += tok;
  }
  return key;
}

std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& tok : tokens) {
    const bool punct = tok.size() == 1 && !is_word(static_cast<unsigned char>(tok[0]));
    if (!out.empty() && !punct) out.push_back(' ');
    out += tok;
  }
  return out;
}

std::vector<NGram> extract_ngrams(std::size_t token_count, std::size_t min_len,
                                  std::size_t max_len) {
  std::vector<NGram> out;
  const std::size_t longest = std::min(max_len, token_count);
  for (std::size_t len = longest; len >= std::max<std::size_t>(min_len, 1) && len > 0; --len) {
    for (std::size_t start = 0; start + len <= token_count; ++start) out.push_back({start, len});
  }
  return out;
}

}  // namespace typesql
