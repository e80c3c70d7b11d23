#include "typesql/harness/loss.hpp"

#include "typesql/numkernel/error.hpp"
#include "typesql/numkernel/ops.hpp"

namespace typesql {

SlotTargets make_targets(const SqlQuery& gold, const std::vector<std::string>& tokens) {
  SlotTargets t;
  t.select_col = gold.sel;
  t.agg = static_cast<std::size_t>(gold.agg);
  for (const auto& c : gold.conds) {
    t.cond_cols.push_back(c.col);
    t.cond_ops.push_back(static_cast<std::size_t>(c.op));
    t.cond_val_spans.push_back(locate_value(tokens, c.val));
  }
  return t;
}

Var total_loss(const SlotScores& scores, const SlotTargets& gold) {
  Tape& tape = scores.select_col.tape();
  std::vector<Var> terms;
  terms.push_back(cross_entropy(scores.select_col, gold.select_col));
  terms.push_back(cross_entropy(scores.cond_number, gold.cond_cols.size()));
  terms.push_back(cross_entropy(scores.agg, gold.agg));

  std::vector<double> membership(scores.cond_cols.cols(), 0.0);
  for (auto c : gold.cond_cols) {
    if (c >= membership.size()) throw Error("total_loss: condition column out of range");
    membership[c] = 1.0;
  }
  terms.push_back(weighted_bce_with_logits(scores.cond_cols, membership, kCondColPositiveWeight));

  if (scores.ops.size() != gold.cond_ops.size()) throw Error("total_loss: operator count mismatch");
  for (std::size_t i = 0; i < scores.ops.size(); ++i)
    terms.push_back(cross_entropy(scores.ops[i], gold.cond_ops[i]));
  for (std::size_t i = 0; i < scores.pointer.size(); ++i) {
    const auto& steps = scores.pointer[i];
    const auto& targets = scores.pointer_targets[i];
    for (std::size_t s = 0; s < steps.size(); ++s) terms.push_back(cross_entropy(steps[s], targets[s]));
  }
  return add_scalars(tape, terms);
}

}  // namespace typesql
