#pragma once

#include <string>
#include <variant>
#include <vector>

namespace typesql {

enum class ColumnKind { Text, Real };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Text;
};

struct TableSchema {
  std::string id;
  std::vector<Column> columns;

  std::size_t size() const { return columns.size(); }
};

/// A cell is either text or a finite real.
using Cell = std::variant<std::string, double>;

struct Table {
  TableSchema schema;
  std::vector<std::vector<Cell>> rows;

  const std::string& id() const { return schema.id; }
  std::size_t column_count() const { return schema.columns.size(); }

  /// Throws if a row has the wrong length or a real column holds a
  /// non-finite or non-numeric cell.
  void validate() const;
};

/// Text form of a cell; reals use the shortest round-trip representation
/// ("1998", "88.5").
std::string cell_text(const Cell& cell);

/// Parses a whole string as a finite number after trimming.
bool parse_number(const std::string& text, double& out);

/// Lowercase, trimmed, internal whitespace collapsed to single spaces.
std::string normalize_value(const std::string& text);

}  // namespace typesql
