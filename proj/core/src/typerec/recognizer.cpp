#include "typesql/typerec/recognizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <regex>
#include <unordered_map>

#include "typesql/numkernel/error.hpp"

namespace typesql {

namespace {

constexpr std::size_t kMaxGram = 6;

bool all_untagged(const TaggedQuestion& tq, const NGram& g) {
  for (std::size_t i = g.start; i < g.start + g.length; ++i)
    if (!tq.tags[i].is_none()) return false;
  return true;
}

std::string span_text(const TaggedQuestion& tq, const NGram& g) {
  std::string s;
  for (std::size_t i = g.start; i < g.start + g.length; ++i) {
    if (i != g.start) s.push_back(' ');
    s += tq.tokens[i];
  }
  return s;
}

// Longest-first, leftmost span matching shared by every dictionary pass.
void tag_spans(TaggedQuestion& tq, const std::function<std::optional<TypeTag>(const std::string&)>& lookup) {
  for (const NGram& g : extract_ngrams(tq.size(), 1, kMaxGram)) {
    if (!all_untagged(tq, g)) continue;
    if (auto tag = lookup(span_text(tq, g))) {
      for (std::size_t i = g.start; i < g.start + g.length; ++i) tq.tags[i] = *tag;
    }
  }
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool is_month(const std::string& s) {
  static const std::array<std::string_view, 23> months = {
      "january", "february", "march", "april", "may", "june", "july", "august", "september",
      "october", "november", "december", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep",
      "sept", "oct", "nov"};
  return s == "dec" || std::find(months.begin(), months.end(), s) != months.end();
}

bool is_day(const std::string& s) {
  if (!all_digits(s) || s.size() > 2) return false;
  const int d = std::stoi(s);
  return d >= 1 && d <= 31;
}

bool is_year_literal(const std::string& s) {
  if (s.size() != 4 || !all_digits(s)) return false;
  const int y = std::stoi(s);
  return y >= 1300 && y <= 2100;
}

// Month-name dates: "july 1 1999", "july 1 , 1999", "1 july 1999".
std::size_t date_phrase_length(const TaggedQuestion& tq, std::size_t i) {
  const auto& t = tq.tokens;
  auto at = [&](std::size_t k) -> const std::string& { return t[k]; };
  auto fits = [&](std::size_t len) { return i + len <= t.size(); };
  auto free = [&](std::size_t len) { return all_untagged(tq, {i, len}); };
  const bool month_first = fits(3) && is_month(at(i)) && is_day(at(i + 1));
  const bool day_first = fits(3) && is_day(at(i)) && is_month(at(i + 1));
  if (!month_first && !day_first) return 0;
  if (fits(4) && at(i + 2) == "," && is_year_literal(at(i + 3)) && free(4)) return 4;
  if (is_year_literal(at(i + 2)) && free(3)) return 3;
  return 0;
}

}  // namespace

std::string_view mode_name(TypingMode mode) {
  return mode == TypingMode::Content ? "content" : "insensitive";
}

TypingMode parse_mode(std::string_view name) {
  if (name == "content") return TypingMode::Content;
  if (name == "insensitive") return TypingMode::Insensitive;
  throw Error("unknown mode '" + std::string(name) + "' (expected insensitive or content)");
}

TaggedQuestion untagged(std::string_view question) {
  Tokens t = tokenize(question);
  TaggedQuestion tq;
  tq.tags.assign(t.tokens.size(), TypeTag{});
  tq.tokens = std::move(t.tokens);
  tq.char_spans = std::move(t.spans);
  return tq;
}

void tag_schema_columns(TaggedQuestion& tq, const TableSchema& schema) {
  std::unordered_map<std::string, std::size_t> names;
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    const std::string key = token_key(schema.columns[c].name);
    if (!key.empty()) names.emplace(key, c);
  }
  tag_spans(tq, [&](const std::string& text) -> std::optional<TypeTag> {
    if (names.contains(text)) return TypeTag::of(TypeKind::Column);
    return std::nullopt;
  });
}

void tag_content(TaggedQuestion& tq, const Table& table) {
  // cell text -> lowest column index holding it
  std::unordered_map<std::string, std::size_t> values;
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size() && c < table.column_count(); ++c) {
      const std::string key = token_key(cell_text(row[c]));
      if (key.empty()) continue;
      auto [it, inserted] = values.emplace(key, c);
      if (!inserted) it->second = std::min(it->second, c);
    }
  }
  tag_spans(tq, [&](const std::string& text) -> std::optional<TypeTag> {
    auto it = values.find(text);
    if (it == values.end()) return std::nullopt;
    return TypeTag::column_value(it->second);
  });
}

void tag_numbers(TaggedQuestion& tq) {
  static const std::regex iso_date(R"(\d{4}-\d{1,2}-\d{1,2})");
  static const std::regex dmy_date(R"(\d{1,2}[-/]\d{1,2}[-/]\d{4})");
  static const std::regex decimal(R"(\d+\.\d+)");
  for (std::size_t i = 0; i < tq.size(); ++i) {
    if (const std::size_t n = date_phrase_length(tq, i); n > 0) {
      for (std::size_t k = i; k < i + n; ++k) tq.tags[k] = TypeTag::of(TypeKind::Date);
      i += n - 1;
    }
  }
  for (std::size_t i = 0; i < tq.size(); ++i) {
    if (!tq.tags[i].is_none()) continue;
    const std::string& tok = tq.tokens[i];
    if (std::regex_match(tok, iso_date) || std::regex_match(tok, dmy_date)) {
      tq.tags[i] = TypeTag::of(TypeKind::Date);
    } else if (is_year_literal(tok)) {
      tq.tags[i] = TypeTag::of(TypeKind::Year);
    } else if (all_digits(tok)) {
      tq.tags[i] = TypeTag::of(TypeKind::Integer);
    } else if (std::regex_match(tok, decimal)) {
      tq.tags[i] = TypeTag::of(TypeKind::Float);
    }
  }
}

void tag_entities(TaggedQuestion& tq, const Gazetteer& gazetteer) {
  if (gazetteer.empty()) return;
  tag_spans(tq, [&](const std::string& text) -> std::optional<TypeTag> {
    if (auto kind = gazetteer.find(text)) return TypeTag::of(*kind);
    return std::nullopt;
  });
}

TaggedQuestion recognize(std::string_view question, const TableSchema& schema,
                         const Table* table, TypingMode mode, const Gazetteer* gazetteer) {
  if (mode == TypingMode::Content && table == nullptr) {
    throw Error("content mode requires table rows");
  }
  TaggedQuestion tq = untagged(question);
  tag_schema_columns(tq, schema);
  if (mode == TypingMode::Content) tag_content(tq, *table);
  tag_numbers(tq);
  if (gazetteer != nullptr) tag_entities(tq, *gazetteer);
  return tq;
}

}  // namespace typesql
