#include "typesql/execeval/executor.hpp"

#include <algorithm>
#include <cmath>

#include "typesql/numkernel/error.hpp"

namespace typesql {

namespace {

bool as_number(const Cell& cell, double& out) {
  if (const auto* d = std::get_if<double>(&cell)) {
    out = *d;
    return true;
  }
  return parse_number(std::get<std::string>(cell), out);
}

// Total order used to sort multisets before pairwise comparison: numbers
// first by value, then text.
bool cell_less(const Cell& a, const Cell& b) {
  const bool an = std::holds_alternative<double>(a);
  const bool bn = std::holds_alternative<double>(b);
  if (an != bn) return an;
  if (an) return std::get<double>(a) < std::get<double>(b);
  return normalize_value(std::get<std::string>(a)) < normalize_value(std::get<std::string>(b));
}

bool cells_equal(const Cell& a, const Cell& b) {
  const bool an = std::holds_alternative<double>(a);
  const bool bn = std::holds_alternative<double>(b);
  if (an != bn) return false;
  if (an) return numbers_close(std::get<double>(a), std::get<double>(b));
  return normalize_value(std::get<std::string>(a)) == normalize_value(std::get<std::string>(b));
}

}  // namespace

bool numbers_close(double x, double y) {
  const double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= 1e-6 * scale;
}

bool condition_holds(const Cell& cell, Op op, const std::string& value) {
  double lhs = 0.0, rhs = 0.0;
  const bool numeric = as_number(cell, lhs) && parse_number(value, rhs);
  switch (op) {
    case Op::Eq:
      if (numeric) return lhs == rhs;
      return normalize_value(cell_text(cell)) == normalize_value(value);
    case Op::Gt:
      return numeric && lhs > rhs;
    case Op::Lt:
      return numeric && lhs < rhs;
  }
  return false;
}

ResultSet execute(const SqlQuery& q, const Table& t) {
  q.validate(t.column_count());
  std::vector<Cell> kept;
  for (const auto& row : t.rows) {
    bool ok = true;
    for (const auto& c : q.conds) {
      if (!condition_holds(row[c.col], c.op, c.val)) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(row[q.sel]);
  }

  const bool text_column = t.schema.columns[q.sel].kind == ColumnKind::Text;
  switch (q.agg) {
    case Agg::None:
      return {kept};
    case Agg::Count:
      return {Cell(static_cast<double>(kept.size()))};
    case Agg::Sum:
    case Agg::Avg: {
      if (text_column) throw Error("non-numeric aggregate");
      if (kept.empty()) return {EmptyResult{}};
      double s = 0.0;
      for (const auto& c : kept) s += std::get<double>(c);
      if (q.agg == Agg::Avg) s /= static_cast<double>(kept.size());
      return {Cell(s)};
    }
    case Agg::Max:
    case Agg::Min: {
      if (kept.empty()) return {EmptyResult{}};
      auto less = [&](const Cell& a, const Cell& b) {
        if (text_column) return normalize_value(cell_text(a)) < normalize_value(cell_text(b));
        return std::get<double>(a) < std::get<double>(b);
      };
      const auto it = q.agg == Agg::Max ? std::max_element(kept.begin(), kept.end(), less)
                                        : std::min_element(kept.begin(), kept.end(), less);
      return {*it};
    }
  }
  throw Error("execute: unknown aggregator");
}

bool exec_equal(const ResultSet& a, const ResultSet& b) {
  if (a.value.index() != b.value.index()) return false;
  if (a.is_empty()) return true;
  if (a.is_scalar()) return cells_equal(std::get<Cell>(a.value), std::get<Cell>(b.value));
  std::vector<Cell> x = std::get<std::vector<Cell>>(a.value);
  std::vector<Cell> y = std::get<std::vector<Cell>>(b.value);
  if (x.size() != y.size()) return false;
  std::sort(x.begin(), x.end(), cell_less);
  std::sort(y.begin(), y.end(), cell_less);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!cells_equal(x[i], y[i])) return false;
  return true;
}

}  // namespace typesql
