#pragma once

#include "typesql/numkernel/tape.hpp"

namespace typesql {

// Slot-filling equations in row form: question states H_qt are T×d, column
// states H_col are C×d, and each W below is d×d unless noted. Every function
// returns unnormalised scores as a single row.

struct Attention {
  Var alpha;     // C×T, rows sum to 1
  Var H_qt_col;  // C×d = alpha · H_qt
};

/// alpha = softmax_rows(H_col · W_ct · H_qtᵀ)
Attention column_attention(Var H_qt, Var H_col, Var W_ct);

/// s = V tanh(W_c H_colᵀ + W_qt H_qt_colᵀ), 1×C. V is 1×d.
Var select_col_scores(Var H_qt_col, Var H_col, Var W_c, Var W_qt, Var V);

/// V tanh(W_qt Σ_i H_qt_col_iᵀ), 1×5 over condition counts 0..4. V is 5×d.
Var cond_number_scores(Var H_qt_col, Var W_qt, Var V);

/// c = V tanh(W_c H_colᵀ + W_qt H_qt_colᵀ + W_scol H_qt_scolᵀ), 1×C, where
/// H_qt_scol is the selected column's attention row replicated C times.
Var cond_col_scores(Var H_qt_col, Var H_col, Var H_qt_scol, Var W_c, Var W_qt, Var W_scol, Var V);

/// V tanh(W_qt h_scolᵀ), 1×6 in the order NULL, MAX, MIN, COUNT, SUM, AVG. V is 6×d.
Var agg_scores(Var H_qt_scol_row, Var W_qt, Var V);

/// W_t tanh(W_c h_colᵀ + W_qt h_qt_colᵀ), 1×3 in the order =, >, <. W_t is 3×d.
Var op_scores(Var H_qt_col_row, Var H_col_row, Var W_c, Var W_qt, Var W_t);

/// Pointer keys [H_qt; end_key] · W_qtᵀ, (T+1)×d. Computed once per question.
Var pointer_keys(Var H_qt, Var end_key, Var W_qt);

/// v_i = V tanh(W_qt H_qt^i + W_c h_col + W_h h), 1×(T+1); the last entry
/// is the END choice and additionally receives `end_bias` (1×1).
Var pointer_scores(Var keys, Var H_col_row, Var h, Var W_c, Var W_h, Var V, Var end_bias);

}  // namespace typesql
