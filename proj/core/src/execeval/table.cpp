#include "typesql/execeval/table.hpp"

#include <charconv>
#include <cmath>
#include <cctype>

#include "typesql/numkernel/error.hpp"

namespace typesql {

void Table::validate() const {
  const std::size_t n = column_count();
  if (n == 0) throw Error("table " + id() + ": no columns");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) {
      throw Error("table " + id() + ": row " + std::to_string(r) + " has " +
                  std::to_string(rows[r].size()) + " cells, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (schema.columns[c].kind != ColumnKind::Real) continue;
      const auto* v = std::get_if<double>(&rows[r][c]);
      if (v == nullptr || !std::isfinite(*v)) {
        throw Error("table " + id() + ": row " + std::to_string(r) + " column '" +
                    schema.columns[c].name + "' is not a finite number");
      }
    }
  }
}

std::string cell_text(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  const double v = std::get<double>(cell);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool parse_number(const std::string& text, double& out) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  if (b == e) return false;
  if (text[b] == '+') ++b;
  double v = 0.0;
  auto res = std::from_chars(text.data() + b, text.data() + e, v);
  if (res.ec != std::errc() || res.ptr != text.data() + e || !std::isfinite(v)) return false;
  out = v;
  return true;
}

std::string normalize_value(const std::string& text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char ch : text) {
    if (std::isspace(ch)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(ch)));
  }
  return out;
}

}  // namespace typesql
