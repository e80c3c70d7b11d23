#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>

#include "typesql/typerec/type_tag.hpp"

namespace typesql {

/// Offline entity dictionary: normalised multi-word key -> entity category.
///
/// A key listed under several categories keeps the one ranked first in
/// PERSON, COUNTRY, PLACE, ORGANIZATION, SPORT.
class Gazetteer {
 public:
  /// Reads `key<TAB>category` lines. Blank lines and lines starting with '#'
  /// are skipped; an unknown category or a missing tab is an error that
  /// names the line.
  static Gazetteer load(std::istream& in, const std::string& source = "<stream>");
  static Gazetteer load_file(const std::filesystem::path& path);

  void add(const std::string& key, TypeKind kind);
  std::optional<TypeKind> find(const std::string& normalized_key) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::unordered_map<std::string, TypeKind> entries_;
};

/// Lower value wins when one key carries several categories.
int entity_rank(TypeKind kind);

}  // namespace typesql
