#pragma once

#include <string>
#include <variant>
#include <vector>

#include "typesql/execeval/table.hpp"
#include "typesql/sqlgen/sql_query.hpp"

namespace typesql {

struct EmptyResult {
  friend bool operator==(const EmptyResult&, const EmptyResult&) = default;
};

/// Outcome of executing a query: the selected cells (NULL aggregator), a
/// single aggregate value, or EMPTY when MIN/MAX/SUM/AVG saw no rows.
struct ResultSet {
  std::variant<EmptyResult, Cell, std::vector<Cell>> value;

  bool is_empty() const { return std::holds_alternative<EmptyResult>(value); }
  bool is_scalar() const { return std::holds_alternative<Cell>(value); }
  bool is_multiset() const { return std::holds_alternative<std::vector<Cell>>(value); }
};

/// Whether a single condition holds for a cell.
///  '=' compares numerically when both sides parse as numbers, otherwise
///  compares normalize_value() text. '>' and '<' are false unless both sides
///  are numeric.
bool condition_holds(const Cell& cell, Op op, const std::string& value);

/// Runs the query. SUM/AVG over a text column throws "non-numeric aggregate".
/// MIN/MAX over text order by normalize_value() text.
ResultSet execute(const SqlQuery& q, const Table& t);

/// Multisets compare element-wise after sorting, numbers within
/// 1e-6·max(1, |x|, |y|) and text after normalize_value(). EMPTY equals only EMPTY.
bool exec_equal(const ResultSet& a, const ResultSet& b);

bool numbers_close(double x, double y);

}  // namespace typesql
