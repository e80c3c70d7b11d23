#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "typesql/execeval/table.hpp"
#include "typesql/slots/model.hpp"

namespace typesql {

enum class Agg : std::size_t { None = 0, Max, Min, Count, Sum, Avg };
enum class Op : std::size_t { Eq = 0, Gt, Lt };

struct Condition {
  std::size_t col = 0;
  Op op = Op::Eq;
  std::string val;
  friend bool operator==(const Condition&, const Condition&) = default;
};

/// SELECT $AGG $SELECT_COL WHERE $COND_COL $OP $COND_VAL (AND ...)*
struct SqlQuery {
  Agg agg = Agg::None;
  std::size_t sel = 0;
  std::vector<Condition> conds;

  /// Throws when a column index is outside the schema or there are more
  /// than four conditions.
  void validate(std::size_t column_count) const;
  friend bool operator==(const SqlQuery&, const SqlQuery&) = default;
};

struct AssembleStats {
  std::size_t dropped_duplicates = 0;
};

/// Builds the sketch instance. Values are the span tokens joined by
/// detokenize(); a repeated condition column keeps its first occurrence.
SqlQuery assemble(const SlotPrediction& pred, const std::vector<std::string>& tokens,
                  AssembleStats* stats = nullptr);

/// `SELECT AGG(col) FROM id WHERE col op val AND ...`; a NULL aggregator
/// renders the bare column and values are written verbatim.
std::string render(const SqlQuery& q, const TableSchema& schema);

/// Same aggregator and select column, and the same conditions as a multiset,
/// with values compared after normalize_value().
bool canonical_equal(const SqlQuery& a, const SqlQuery& b);
/// The WHERE part of canonical_equal alone.
bool conditions_equal(const std::vector<Condition>& a, const std::vector<Condition>& b);

}  // namespace typesql
