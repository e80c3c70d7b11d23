#include "typesql/typerec/gazetteer.hpp"

#include <array>
#include <fstream>
#include <istream>

#include "typesql/numkernel/error.hpp"

namespace typesql {

namespace {

constexpr std::array<std::pair<std::string_view, TypeKind>, 11> kNames = {{
    {"none", TypeKind::None},
    {"column", TypeKind::Column},
    {"integer", TypeKind::Integer},
    {"float", TypeKind::Float},
    {"date", TypeKind::Date},
    {"year", TypeKind::Year},
    {"person", TypeKind::Person},
    {"place", TypeKind::Place},
    {"country", TypeKind::Country},
    {"organization", TypeKind::Organization},
    {"sport", TypeKind::Sport},
}};

}  // namespace

std::string_view kind_name(TypeKind kind) {
  for (const auto& [name, k] : kNames)
    if (k == kind) return name;
  return "column_value";
}

std::optional<TypeKind> entity_kind_from_name(std::string_view name) {
  for (const auto& [n, k] : kNames) {
    if (n != name) continue;
    if (entity_rank(k) < 0) return std::nullopt;
    return k;
  }
  return std::nullopt;
}

std::string tag_label(const TypeTag& tag, const TableSchema& schema) {
  if (tag.kind != TypeKind::ColumnValue) return std::string(kind_name(tag.kind));
  if (tag.column >= schema.columns.size()) throw Error("tag refers to a column outside the schema");
  return token_key(schema.columns[tag.column].name);
}

void TaggedQuestion::check() const {
  if (tokens.empty()) throw Error("tagged question has no tokens");
  if (tags.size() != tokens.size() || char_spans.size() != tokens.size()) {
    throw Error("tagged question: tokens, tags and spans are not parallel");
  }
}

int entity_rank(TypeKind kind) {
  switch (kind) {
    case TypeKind::Person: return 0;
    case TypeKind::Country: return 1;
    case TypeKind::Place: return 2;
    case TypeKind::Organization: return 3;
    case TypeKind::Sport: return 4;
    default: return -1;
  }
}

void Gazetteer::add(const std::string& key, TypeKind kind) {
  if (entity_rank(kind) < 0) throw Error("gazetteer: not an entity category");
  const std::string norm = token_key(key);
  if (norm.empty()) throw Error("gazetteer: empty key");
  auto [it, inserted] = entries_.emplace(norm, kind);
  if (!inserted && entity_rank(kind) < entity_rank(it->second)) it->second = kind;
}

std::optional<TypeKind> Gazetteer::find(const std::string& normalized_key) const {
  auto it = entries_.find(normalized_key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Gazetteer Gazetteer::load(std::istream& in, const std::string& source) {
  Gazetteer g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    const std::string where = source + ":" + std::to_string(lineno);
    if (tab == std::string::npos) throw Error(where + ": expected key<TAB>category");
    const std::string category = normalize_value(line.substr(tab + 1));
    const auto kind = entity_kind_from_name(category);
    if (!kind) throw Error(where + ": unknown category '" + category + "'");
    if (token_key(line.substr(0, tab)).empty()) throw Error(where + ": empty key");
    g.add(line.substr(0, tab), *kind);
  }
  return g;
}

Gazetteer Gazetteer::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gazetteer " + path.string());
  return load(in, path.string());
}

}  // namespace typesql
