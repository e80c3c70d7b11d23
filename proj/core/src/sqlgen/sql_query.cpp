#include "typesql/sqlgen/sql_query.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "typesql/numkernel/error.hpp"
#include "typesql/typerec/tokenize.hpp"

namespace typesql {

void SqlQuery::validate(std::size_t column_count) const {
  if (static_cast<std::size_t>(agg) >= kAggCount) throw Error("query: aggregator out of range");
  if (sel >= column_count) throw Error("query: select column out of range");
  if (conds.size() > kMaxConditions) throw Error("query: more than 4 conditions");
  for (const auto& c : conds) {
    if (c.col >= column_count) throw Error("query: condition column out of range");
    if (static_cast<std::size_t>(c.op) >= kOpCount) throw Error("query: operator out of range");
  }
}

SqlQuery assemble(const SlotPrediction& pred, const std::vector<std::string>& tokens,
                  AssembleStats* stats) {
  if (pred.cond_cols.size() != pred.cond_ops.size() ||
      pred.cond_cols.size() != pred.cond_val_spans.size()) {
    throw Error("assemble: condition lists are not parallel");
  }
  SqlQuery q;
  q.agg = static_cast<Agg>(pred.agg);
  q.sel = pred.select_col;
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < pred.cond_cols.size(); ++i) {
    if (!seen.insert(pred.cond_cols[i]).second) {
      if (stats) ++stats->dropped_duplicates;
      continue;
    }
    std::vector<std::string> words;
    for (auto t : pred.cond_val_spans[i]) {
      if (t >= tokens.size()) throw Error("assemble: value span index out of range");
      words.push_back(tokens[t]);
    }
    q.conds.push_back({pred.cond_cols[i], static_cast<Op>(pred.cond_ops[i]), detokenize(words)});
    if (q.conds.size() == kMaxConditions) break;
  }
  return q;
}

std::string render(const SqlQuery& q, const TableSchema& schema) {
  q.validate(schema.columns.size());
  std::string out = "SELECT ";
  const std::string& sel = schema.columns[q.sel].name;
  if (q.agg == Agg::None) {
    out += sel;
  } else {
    out += std::string(kAggNames[static_cast<std::size_t>(q.agg)]) + "(" + sel + ")";
  }
  out += " FROM " + schema.id;
  for (std::size_t i = 0; i < q.conds.size(); ++i) {
    const auto& c = q.conds[i];
    out += i == 0 ? " WHERE " : " AND ";
    out += schema.columns[c.col].name + " " + std::string(kOpNames[static_cast<std::size_t>(c.op)]) +
           " " + c.val;
  }
  return out;
}

bool conditions_equal(const std::vector<Condition>& a, const std::vector<Condition>& b) {
  if (a.size() != b.size()) return false;
  using Key = std::tuple<std::size_t, Op, std::string>;
  auto keys = [](const std::vector<Condition>& cs) {
    std::vector<Key> k;
    for (const auto& c : cs) k.emplace_back(c.col, c.op, normalize_value(c.val));
    std::sort(k.begin(), k.end());
    return k;
  };
  return keys(a) == keys(b);
}

bool canonical_equal(const SqlQuery& a, const SqlQuery& b) {
  return a.agg == b.agg && a.sel == b.sel && conditions_equal(a.conds, b.conds);
}

}  // namespace typesql
