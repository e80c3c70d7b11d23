#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "typesql/execeval/metrics.hpp"
#include "typesql/sqlgen/sql_query.hpp"

namespace typesql {

struct Example {
  std::string question;
  std::string table_id;
  SqlQuery gold;
  friend bool operator==(const Example&, const Example&) = default;
};

struct Dataset {
  std::vector<Example> examples;
  TableMap tables;
};

// Examples file, one JSON object per line:
//   {"question": str, "table_id": str,
//    "sql": {"sel": int, "agg": 0..5, "conds": [[col, 0..2, "val"], ...]}}
// Tables file, one JSON object per line:
//   {"id": str, "header": [str], "types": ["text"|"real"], "rows": [[...]]}
// Malformed lines raise an error naming the source and line number.

std::vector<Example> read_examples(std::istream& in, const std::string& source = "<stream>");
TableMap read_tables(std::istream& in, const std::string& source = "<stream>");
void write_examples(std::ostream& out, const std::vector<Example>& examples);
void write_tables(std::ostream& out, const TableMap& tables);

std::string example_json(const Example& e);
std::string table_json(const Table& t);

/// Loads both files; every example must reference a known table and its gold
/// query must be valid against that table's schema.
Dataset load_dataset(const std::filesystem::path& examples_path,
                     const std::filesystem::path& tables_path);
TableMap load_tables(const std::filesystem::path& tables_path);

void save_examples(const std::filesystem::path& path, const std::vector<Example>& examples);
void save_tables(const std::filesystem::path& path, const TableMap& tables);

}  // namespace typesql
