#include "typesql/execeval/metrics.hpp"

#include <optional>

#include <json.hpp>

#include "typesql/execeval/executor.hpp"
#include "typesql/numkernel/error.hpp"

namespace typesql {

void Metrics::add(const Metrics& o) {
  n += o.n;
  lf += o.lf;
  qm += o.qm;
  ex += o.ex;
  agg += o.agg;
  sel += o.sel;
  where += o.where;
}

Metrics evaluate_example(const SqlQuery& pred, const SqlQuery& gold, const Table& table) {
  Metrics m;
  m.n = 1;
  const bool pred_valid = [&] {
    try {
      pred.validate(table.column_count());
      return true;
    } catch (const Error&) {
      return false;
    }
  }();
  if (pred_valid) m.lf = render(pred, table.schema) == render(gold, table.schema) ? 1 : 0;
  m.qm = canonical_equal(pred, gold) ? 1 : 0;
  m.agg = pred.agg == gold.agg ? 1 : 0;
  m.sel = pred.sel == gold.sel ? 1 : 0;
  m.where = conditions_equal(pred.conds, gold.conds) ? 1 : 0;
  if (pred_valid) {
    // Both sides failing (e.g. SUM over a text column) is the same outcome.
    auto run = [&](const SqlQuery& q) -> std::optional<ResultSet> {
      try {
        return execute(q, table);
      } catch (const Error&) {
        return std::nullopt;
      }
    };
    const auto want = run(gold);
    const auto got = run(pred);
    if (want && got) {
      m.ex = exec_equal(*got, *want) ? 1 : 0;
    } else {
      m.ex = !want && !got ? 1 : 0;
    }
  }
  return m;
}

Metrics evaluate_dataset(const std::vector<SqlQuery>& preds, const std::vector<SqlQuery>& golds,
                         const std::vector<std::string>& table_ids, const TableMap& tables) {
  if (preds.size() != golds.size() || golds.size() != table_ids.size()) {
    throw Error("evaluate_dataset: predictions, golds and table ids differ in length");
  }
  Metrics total;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    auto it = tables.find(table_ids[i]);
    if (it == tables.end()) throw Error("unknown table id: " + table_ids[i]);
    total.add(evaluate_example(preds[i], golds[i], it->second));
  }
  return total;
}

std::string metrics_json(const Metrics& m) {
  nlohmann::ordered_json j;
  j["n"] = m.n;
  j["acc_lf"] = m.acc_lf();
  j["acc_qm"] = m.acc_qm();
  j["acc_ex"] = m.acc_ex();
  j["acc_agg"] = m.acc_agg();
  j["acc_sel"] = m.acc_sel();
  j["acc_where"] = m.acc_where();
  return j.dump();
}

}  // namespace typesql
