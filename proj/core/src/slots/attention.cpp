#include "typesql/numkernel/error.hpp"
#include "typesql/numkernel/ops.hpp"
#include "typesql/slots/predictors.hpp"

namespace typesql {

Attention column_attention(Var H_qt, Var H_col, Var W_ct) {
  if (H_qt.cols() != H_col.cols() || W_ct.rows() != H_col.cols() || W_ct.cols() != H_qt.cols()) {
    throw Error("column_attention: shape mismatch");
  }
  Var scores = matmul_nt(matmul(H_col, W_ct), H_qt);
  Var alpha = softmax_rows(scores);
  return {alpha, matmul(alpha, H_qt)};
}

}  // namespace typesql
