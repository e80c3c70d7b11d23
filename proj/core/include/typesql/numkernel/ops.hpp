#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "typesql/numkernel/matrix.hpp"
#include "typesql/numkernel/tape.hpp"

namespace typesql {

/// Row mask: true keeps an entry, false forces its probability to exactly 0.
using Mask = std::vector<std::vector<bool>>;

// Value-level kernels.

/// Row-wise softmax with max subtraction. Throws "empty softmax row" when a
/// row is fully masked.
Matrix softmax_rows(const Matrix& m, const Mask* mask = nullptr);
/// −log softmax(logits)[target].
double cross_entropy(std::span<const double> logits, std::size_t target);
double log_sum_exp(std::span<const double> values);

// Recorded operations.

Var matmul(Var a, Var b);
/// a · bᵀ
Var matmul_nt(Var a, Var b);
Var transpose(Var a);
Var add(Var a, Var b);
/// Adds the 1×n row `b` to every row of `a`.
Var add_row(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double s);
Var tanh(Var a);
Var sigmoid(Var a);
Var softmax_rows(Var a, const Mask* mask = nullptr);

Var concat_cols(const std::vector<Var>& parts);
Var concat_rows(const std::vector<Var>& parts);
Var slice_cols(Var a, std::size_t start, std::size_t len);
Var row(Var a, std::size_t r);
Var repeat_rows(Var a, std::size_t times);
/// Column sums, 1×cols.
Var sum_rows(Var a);
/// Sum of 1×1 scalars. An empty list yields the constant 0.
Var add_scalars(Tape& tape, const std::vector<Var>& scalars);

/// Inverted dropout; the identity when the tape is not training or rate is 0.
Var dropout(Var a, double rate);

Var cross_entropy(Var logits, std::size_t target);
/// Σ_k −[w·y_k·log σ(x_k) + (1−y_k)·log(1−σ(x_k))] over a 1×K row of logits.
Var weighted_bce_with_logits(Var logits, std::span<const double> targets, double pos_weight);

}  // namespace typesql
