#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "typesql/execeval/table.hpp"
#include "typesql/typerec/tokenize.hpp"

namespace typesql {

enum class TypeKind : std::uint8_t {
  None,
  Column,
  Integer,
  Float,
  Date,
  Year,
  Person,
  Place,
  Country,
  Organization,
  Sport,
  ColumnValue,  // content mode only; carries a column index
};

/// Number of kinds with their own trainable embedding (all but ColumnValue).
inline constexpr std::size_t kEmbeddedTypeCount = 11;

struct TypeTag {
  TypeKind kind = TypeKind::None;
  std::size_t column = 0;  // meaningful for ColumnValue only

  static TypeTag of(TypeKind k) { return {k, 0}; }
  static TypeTag column_value(std::size_t c) { return {TypeKind::ColumnValue, c}; }
  bool is_none() const { return kind == TypeKind::None; }

  friend bool operator==(const TypeTag&, const TypeTag&) = default;
};

std::string_view kind_name(TypeKind kind);
std::optional<TypeKind> entity_kind_from_name(std::string_view name);

/// "none", "column", ... or, for ColumnValue, the normalised column name.
std::string tag_label(const TypeTag& tag, const TableSchema& schema);

struct TaggedQuestion {
  std::vector<std::string> tokens;
  std::vector<TypeTag> tags;
  std::vector<CharSpan> char_spans;

  std::size_t size() const { return tokens.size(); }
  /// Throws unless tokens, tags and spans are non-empty and parallel.
  void check() const;
};

}  // namespace typesql
