#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "typesql/execeval/table.hpp"
#include "typesql/sqlgen/sql_query.hpp"

namespace typesql {

/// Match counters over n examples; the acc_* accessors divide by n.
struct Metrics {
  std::size_t n = 0;
  std::size_t lf = 0;     // rendered SQL strings identical
  std::size_t qm = 0;     // canonical_equal
  std::size_t ex = 0;     // execution results equal
  std::size_t agg = 0;
  std::size_t sel = 0;
  std::size_t where = 0;

  double acc_lf() const { return ratio(lf); }
  double acc_qm() const { return ratio(qm); }
  double acc_ex() const { return ratio(ex); }
  double acc_agg() const { return ratio(agg); }
  double acc_sel() const { return ratio(sel); }
  double acc_where() const { return ratio(where); }

  void add(const Metrics& other);

 private:
  double ratio(std::size_t k) const { return n == 0 ? 0.0 : static_cast<double>(k) / n; }
};

using TableMap = std::map<std::string, Table>;

/// Scores one prediction against its gold query. A prediction whose
/// execution throws counts as an execution mismatch.
Metrics evaluate_example(const SqlQuery& pred, const SqlQuery& gold, const Table& table);

/// `table_ids[i]` names the table of example i; a missing id is an error.
Metrics evaluate_dataset(const std::vector<SqlQuery>& preds, const std::vector<SqlQuery>& golds,
                         const std::vector<std::string>& table_ids, const TableMap& tables);

/// {"n":..,"acc_lf":..,"acc_qm":..,"acc_ex":..,"acc_agg":..,"acc_sel":..,"acc_where":..}
std::string metrics_json(const Metrics& m);

}  // namespace typesql
