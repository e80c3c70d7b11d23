#include "typesql/numkernel/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "typesql/numkernel/error.hpp"

namespace typesql {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double sigmoid_value(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Matrix softmax_rows(const Matrix& m, const Mask* mask) {
  require(m.rows() >= 1 && m.cols() >= 1, "softmax_rows: empty matrix");
  if (mask) {
    require(mask->size() == m.rows(), "softmax_rows: mask row count mismatch");
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::vector<bool>* keep = mask ? &(*mask)[r] : nullptr;
    if (keep) require(keep->size() == m.cols(), "softmax_rows: mask column count mismatch");
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!keep || (*keep)[c]) mx = std::max(mx, m(r, c));
    if (mx == -std::numeric_limits<double>::infinity()) throw Error("empty softmax row");
    double z = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (keep && !(*keep)[c]) continue;
      out(r, c) = std::exp(m(r, c) - mx);
      z += out(r, c);
    }
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) /= z;
  }
  return out;
}

double log_sum_exp(std::span<const double> values) {
  require(!values.empty(), "log_sum_exp: empty input");
  const double mx = *std::max_element(values.begin(), values.end());
  double z = 0.0;
  for (double v : values) z += std::exp(v - mx);
  return mx + std::log(z);
}

double cross_entropy(std::span<const double> logits, std::size_t target) {
  if (target >= logits.size()) {
    throw Error("cross_entropy: target " + std::to_string(target) + " out of range for " +
                std::to_string(logits.size()) + " classes");
  }
  return log_sum_exp(logits) - logits[target];
}

Var matmul(Var a, Var b) {
  Matrix out(a.rows(), b.cols());
  gemm_acc(a.value(), b.value(), out);
  const std::size_t ia = a.id(), ib = b.id();
  return a.tape().record(std::move(out), {a, b}, [ia, ib](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) gemm_nt_acc(g, t.value(ib), t.accum(ia));
    if (t.needs_grad(ib)) gemm_tn_acc(t.value(ia), g, t.accum(ib));
  });
}

Var matmul_nt(Var a, Var b) {
  Matrix out(a.rows(), b.rows());
  gemm_nt_acc(a.value(), b.value(), out);
  const std::size_t ia = a.id(), ib = b.id();
  return a.tape().record(std::move(out), {a, b}, [ia, ib](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) gemm_acc(g, t.value(ib), t.accum(ia));
    if (t.needs_grad(ib)) gemm_tn_acc(g, t.value(ia), t.accum(ib));
  });
}

Var transpose(Var a) {
  const std::size_t ia = a.id();
  return a.tape().record(transpose(a.value()), {a}, [ia](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& ga = t.accum(ia);
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) ga(j, i) += g(i, j);
  });
}

Var add(Var a, Var b) {
  require(a.value().same_shape(b.value()), "add: shape mismatch");
  Matrix out = a.value();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b.value()[k];
  const std::size_t ia = a.id(), ib = b.id();
  return a.tape().record(std::move(out), {a, b}, [ia, ib](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    for (std::size_t id : {ia, ib}) {
      if (!t.needs_grad(id)) continue;
      Matrix& acc = t.accum(id);
      for (std::size_t k = 0; k < g.size(); ++k) acc[k] += g[k];
    }
  });
}

Var add_row(Var a, Var b) {
  require(b.rows() == 1 && b.cols() == a.cols(), "add_row: shape mismatch");
  Matrix out = a.value();
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) += b.value()[c];
  const std::size_t ia = a.id(), ib = b.id();
  return a.tape().record(std::move(out), {a, b}, [ia, ib](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) {
      Matrix& acc = t.accum(ia);
      for (std::size_t k = 0; k < g.size(); ++k) acc[k] += g[k];
    }
    if (t.needs_grad(ib)) {
      Matrix& acc = t.accum(ib);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) acc[c] += g(r, c);
    }
  });
}

Var mul(Var a, Var b) {
  require(a.value().same_shape(b.value()), "mul: shape mismatch");
  Matrix out = a.value();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= b.value()[k];
  const std::size_t ia = a.id(), ib = b.id();
  return a.tape().record(std::move(out), {a, b}, [ia, ib](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) {
      Matrix& acc = t.accum(ia);
      const Matrix& vb = t.value(ib);
      for (std::size_t k = 0; k < g.size(); ++k) acc[k] += g[k] * vb[k];
    }
    if (t.needs_grad(ib)) {
      Matrix& acc = t.accum(ib);
      const Matrix& va = t.value(ia);
      for (std::size_t k = 0; k < g.size(); ++k) acc[k] += g[k] * va[k];
    }
  });
}

Var scale(Var a, double s) {
  Matrix out = a.value();
  for (auto& v : out.data()) v *= s;
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia, s](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& acc = t.accum(ia);
    for (std::size_t k = 0; k < g.size(); ++k) acc[k] += s * g[k];
  });
}

Var tanh(Var a) {
  Matrix out = a.value();
  for (auto& v : out.data()) v = std::tanh(v);
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    const Matrix& y = t.value(self);
    Matrix& acc = t.accum(ia);
    for (std::size_t k = 0; k < g.size(); ++k) acc[k] += g[k] * (1.0 - y[k] * y[k]);
  });
}

Var sigmoid(Var a) {
  Matrix out = a.value();
  for (auto& v : out.data()) v = sigmoid_value(v);
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    const Matrix& y = t.value(self);
    Matrix& acc = t.accum(ia);
    for (std::size_t k = 0; k < g.size(); ++k) acc[k] += g[k] * y[k] * (1.0 - y[k]);
  });
}

Var softmax_rows(Var a, const Mask* mask) {
  const std::size_t ia = a.id();
  return a.tape().record(softmax_rows(a.value(), mask), {a}, [ia](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    const Matrix& y = t.value(self);
    Matrix& acc = t.accum(ia);
    for (std::size_t r = 0; r < y.rows(); ++r) {
      double dot = 0.0;
      for (std::size_t c = 0; c < y.cols(); ++c) dot += g(r, c) * y(r, c);
      for (std::size_t c = 0; c < y.cols(); ++c) acc(r, c) += y(r, c) * (g(r, c) - dot);
    }
  });
}

Var concat_cols(const std::vector<Var>& parts) {
  require(!parts.empty(), "concat_cols: no inputs");
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const Var& p : parts) {
    require(p.rows() == rows, "concat_cols: row count mismatch");
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::vector<std::size_t> ids;
  std::size_t off = 0;
  for (const Var& p : parts) {
    const Matrix& v = p.value();
    for (std::size_t r = 0; r < rows; ++r)
      std::copy(v.row(r).begin(), v.row(r).end(), out.row(r).begin() + off);
    off += v.cols();
    ids.push_back(p.id());
  }
  return parts.front().tape().record(std::move(out), parts, [ids](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    std::size_t off = 0;
    for (std::size_t id : ids) {
      const std::size_t w = t.value(id).cols();
      if (t.needs_grad(id)) {
        Matrix& acc = t.accum(id);
        for (std::size_t r = 0; r < g.rows(); ++r)
          for (std::size_t c = 0; c < w; ++c) acc(r, c) += g(r, off + c);
      }
      off += w;
    }
  });
}

Var concat_rows(const std::vector<Var>& parts) {
  require(!parts.empty(), "concat_rows: no inputs");
  const std::size_t cols = parts.front().cols();
  std::vector<double> data;
  std::vector<std::size_t> ids;
  std::size_t rows = 0;
  for (const Var& p : parts) {
    require(p.cols() == cols, "concat_rows: column count mismatch");
    data.insert(data.end(), p.value().data().begin(), p.value().data().end());
    rows += p.rows();
    ids.push_back(p.id());
  }
  return parts.front().tape().record(
      Matrix(rows, cols, std::move(data)), parts, [ids](Tape& t, std::size_t self) {
        const Matrix& g = t.grad(self);
        std::size_t off = 0;
        for (std::size_t id : ids) {
          const std::size_t n = t.value(id).size();
          if (t.needs_grad(id)) {
            Matrix& acc = t.accum(id);
            for (std::size_t k = 0; k < n; ++k) acc[k] += g[off + k];
          }
          off += n;
        }
      });
}

Var slice_cols(Var a, std::size_t start, std::size_t len) {
  require(start + len <= a.cols() && len > 0, "slice_cols: range out of bounds");
  Matrix out(a.rows(), len);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < len; ++c) out(r, c) = a.value()(r, start + c);
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia, start](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& acc = t.accum(ia);
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) acc(r, start + c) += g(r, c);
  });
}

Var row(Var a, std::size_t r) {
  require(r < a.rows(), "row: index " + std::to_string(r) + " out of range");
  const std::size_t ia = a.id();
  return a.tape().record(Matrix::row_vector(a.value().row(r)), {a},
                         [ia, r](Tape& t, std::size_t self) {
                           const Matrix& g = t.grad(self);
                           auto acc = t.accum(ia).row(r);
                           for (std::size_t c = 0; c < g.cols(); ++c) acc[c] += g[c];
                         });
}

Var repeat_rows(Var a, std::size_t times) {
  require(a.rows() == 1 && times >= 1, "repeat_rows: expects a single row");
  Matrix out(times, a.cols());
  for (std::size_t r = 0; r < times; ++r)
    std::copy(a.value().data().begin(), a.value().data().end(), out.row(r).begin());
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& acc = t.accum(ia);
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) acc[c] += g(r, c);
  });
}

Var sum_rows(Var a) {
  Matrix out(1, a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] += a.value()(r, c);
  const std::size_t ia = a.id();
  return a.tape().record(std::move(out), {a}, [ia](Tape& t, std::size_t self) {
    const Matrix& g = t.grad(self);
    Matrix& acc = t.accum(ia);
    for (std::size_t r = 0; r < acc.rows(); ++r)
      for (std::size_t c = 0; c < acc.cols(); ++c) acc(r, c) += g[c];
  });
}

Var add_scalars(Tape& tape, const std::vector<Var>& scalars) {
  if (scalars.empty()) return tape.constant(Matrix(1, 1));
  double total = 0.0;
  std::vector<std::size_t> ids;
  for (const Var& s : scalars) {
    require(s.value().size() == 1, "add_scalars: non-scalar input");
    total += s.scalar();
    ids.push_back(s.id());
  }
  return tape.record(Matrix(1, 1, total), scalars, [ids](Tape& t, std::size_t self) {
    const double g = t.grad(self)[0];
    for (std::size_t id : ids)
      if (t.needs_grad(id)) t.accum(id)[0] += g;
  });
}

Var dropout(Var a, double rate) {
  require(rate >= 0.0 && rate < 1.0, "dropout: rate must lie in [0, 1)");
  Tape& tape = a.tape();
  if (!tape.training() || rate == 0.0) return a;
  std::bernoulli_distribution keep(1.0 - rate);
  const double s = 1.0 / (1.0 - rate);
  Matrix mask(a.rows(), a.cols());
  for (auto& m : mask.data()) m = keep(tape.rng()) ? s : 0.0;
  return mul(a, tape.constant(std::move(mask)));
}

Var cross_entropy(Var logits, std::size_t target) {
  require(logits.rows() == 1, "cross_entropy: logits must be a single row");
  const Matrix& x = logits.value();
  const double loss = cross_entropy(x.data(), target);
  const std::size_t il = logits.id();
  return logits.tape().record(Matrix(1, 1, loss), {logits},
                              [il, target](Tape& t, std::size_t self) {
                                const double g = t.grad(self)[0];
                                const Matrix p = softmax_rows(t.value(il));
                                Matrix& acc = t.accum(il);
                                for (std::size_t k = 0; k < p.cols(); ++k)
                                  acc[k] += g * (p[k] - (k == target ? 1.0 : 0.0));
                              });
}

Var weighted_bce_with_logits(Var logits, std::span<const double> targets, double pos_weight) {
  require(logits.rows() == 1 && logits.cols() == targets.size(),
          "weighted_bce_with_logits: target length mismatch");
  const Matrix& x = logits.value();
  double loss = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    // −log σ(x) = softplus(−x), −log(1−σ(x)) = softplus(x)
    loss += pos_weight * targets[k] * softplus(-x[k]) + (1.0 - targets[k]) * softplus(x[k]);
  }
  std::vector<double> y(targets.begin(), targets.end());
  const std::size_t il = logits.id();
  return logits.tape().record(
      Matrix(1, 1, loss), {logits}, [il, y = std::move(y), pos_weight](Tape& t, std::size_t self) {
        const double g = t.grad(self)[0];
        const Matrix& x = t.value(il);
        Matrix& acc = t.accum(il);
        for (std::size_t k = 0; k < y.size(); ++k) {
          const double s = sigmoid_value(x[k]);
          acc[k] += g * (pos_weight * y[k] * (s - 1.0) + (1.0 - y[k]) * s);
        }
      });
}

}  // namespace typesql
