#include "typesql/numkernel/error.hpp"
#include "typesql/numkernel/ops.hpp"
#include "typesql/slots/predictors.hpp"

namespace typesql {

Var select_col_scores(Var H_qt_col, Var H_col, Var W_c, Var W_qt, Var V) {
  Var hidden = tanh(add(matmul_nt(H_col, W_c), matmul_nt(H_qt_col, W_qt)));
  return matmul_nt(V, hidden);
}

Var cond_number_scores(Var H_qt_col, Var W_qt, Var V) {
  Var hidden = tanh(matmul_nt(sum_rows(H_qt_col), W_qt));
  return matmul_nt(hidden, V);
}

Var cond_col_scores(Var H_qt_col, Var H_col, Var H_qt_scol, Var W_c, Var W_qt, Var W_scol, Var V) {
  Var pre = add(add(matmul_nt(H_col, W_c), matmul_nt(H_qt_col, W_qt)), matmul_nt(H_qt_scol, W_scol));
  return matmul_nt(V, tanh(pre));
}

Var agg_scores(Var H_qt_scol_row, Var W_qt, Var V) {
  return matmul_nt(tanh(matmul_nt(H_qt_scol_row, W_qt)), V);
}

Var op_scores(Var H_qt_col_row, Var H_col_row, Var W_c, Var W_qt, Var W_t) {
  Var hidden = tanh(add(matmul_nt(H_col_row, W_c), matmul_nt(H_qt_col_row, W_qt)));
  return matmul_nt(hidden, W_t);
}

Var pointer_keys(Var H_qt, Var end_key, Var W_qt) {
  return matmul_nt(concat_rows({H_qt, end_key}), W_qt);
}

Var pointer_scores(Var keys, Var H_col_row, Var h, Var W_c, Var W_h, Var V, Var end_bias) {
  Var query = add(matmul_nt(H_col_row, W_c), matmul_nt(h, W_h));
  Var scores = matmul_nt(V, tanh(add_row(keys, query)));
  const std::size_t T = keys.rows() - 1;
  Tape& tape = keys.tape();
  Var bias = T == 0 ? end_bias : concat_cols({tape.constant(Matrix(1, T)), end_bias});
  return add(scores, bias);
}

}  // namespace typesql
