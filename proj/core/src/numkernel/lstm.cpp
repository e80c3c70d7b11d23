#include "typesql/numkernel/lstm.hpp"

#include <cmath>

#include "typesql/numkernel/error.hpp"
#include "typesql/numkernel/ops.hpp"

namespace typesql {

namespace {

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

struct Gates {
  std::vector<double> i, f, g, o, c, tanh_c;
};

// Shared forward recurrence for the value and tape paths.
Gates run_cell(std::span<const double> x, std::span<const double> h_prev,
               std::span<const double> c_prev, const Matrix& W, std::span<const double> b) {
  const std::size_t h = W.rows() / 4;
  const std::size_t d = W.cols() - h;
  if (x.size() != d || h_prev.size() != h || c_prev.size() != h || b.size() != 4 * h) {
    throw Error("lstm_step: dimension mismatch (input " + std::to_string(x.size()) +
                ", expected " + std::to_string(d) + "; hidden " + std::to_string(h_prev.size()) +
                ", expected " + std::to_string(h) + ")");
  }
  std::vector<double> z(b.begin(), b.end());
  for (std::size_t r = 0; r < 4 * h; ++r) {
    const auto wr = W.row(r);
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += wr[k] * x[k];
    for (std::size_t k = 0; k < h; ++k) s += wr[d + k] * h_prev[k];
    z[r] += s;
  }
  Gates out;
  out.i.resize(h);
  out.f.resize(h);
  out.g.resize(h);
  out.o.resize(h);
  out.c.resize(h);
  out.tanh_c.resize(h);
  for (std::size_t k = 0; k < h; ++k) {
    out.i[k] = logistic(z[k]);
    out.f[k] = logistic(z[h + k]);
    out.g[k] = std::tanh(z[2 * h + k]);
    out.o[k] = logistic(z[3 * h + k]);
    out.c[k] = out.f[k] * c_prev[k] + out.i[k] * out.g[k];
    out.tanh_c[k] = std::tanh(out.c[k]);
  }
  return out;
}

}  // namespace

LstmWeights LstmWeights::zeros(std::size_t input_dim, std::size_t hidden) {
  return {Matrix(4 * hidden, input_dim + hidden), std::vector<double>(4 * hidden, 0.0)};
}

LstmWeights LstmWeights::from_store(const ParamStore& store, const std::string& prefix) {
  const Tensor& b = store.at(prefix + ".b");
  return {store.at(prefix + ".W").as_matrix(), b.data};
}

LstmState lstm_step(std::span<const double> x, std::span<const double> h_prev,
                    std::span<const double> c_prev, const LstmWeights& w) {
  Gates g = run_cell(x, h_prev, c_prev, w.W, w.b);
  LstmState s;
  s.c = g.c;
  s.h.resize(g.c.size());
  for (std::size_t k = 0; k < s.h.size(); ++k) s.h[k] = g.o[k] * g.tanh_c[k];
  return s;
}

Matrix bilstm_encode(const std::vector<std::vector<double>>& seq, const LstmWeights& fw,
                     const LstmWeights& bw) {
  if (seq.empty()) throw Error("empty sequence");
  const std::size_t T = seq.size(), hf = fw.hidden(), hb = bw.hidden();
  Matrix out(T, hf + hb);
  LstmState s{std::vector<double>(hf), std::vector<double>(hf)};
  for (std::size_t t = 0; t < T; ++t) {
    s = lstm_step(seq[t], s.h, s.c, fw);
    std::copy(s.h.begin(), s.h.end(), out.row(t).begin());
  }
  s = {std::vector<double>(hb), std::vector<double>(hb)};
  for (std::size_t t = T; t-- > 0;) {
    s = lstm_step(seq[t], s.h, s.c, bw);
    std::copy(s.h.begin(), s.h.end(), out.row(t).begin() + hf);
  }
  return out;
}

void register_lstm(ParamStore& store, const std::string& prefix, std::size_t input_dim,
                   std::size_t hidden) {
  store.add_uniform(prefix + ".W", {4 * hidden, input_dim + hidden}, hidden);
  store.add_uniform(prefix + ".b", {4 * hidden}, hidden);
}

LstmVars bind_lstm(Tape& tape, ParamStore& store, const std::string& prefix) {
  return {tape.param(store.at(prefix + ".W")), tape.param(store.at(prefix + ".b"))};
}

LstmCell lstm_cell(Var x, Var h_prev, Var c_prev, const LstmVars& w) {
  Tape& tape = x.tape();
  const Matrix& W = w.W.value();
  Gates g = run_cell(x.value().data(), h_prev.value().data(), c_prev.value().data(), W,
                     w.b.value().data());
  const std::size_t h = g.c.size();
  Matrix out(1, 2 * h);
  for (std::size_t k = 0; k < h; ++k) {
    out[k] = g.o[k] * g.tanh_c[k];
    out[h + k] = g.c[k];
  }
  const std::size_t ix = x.id(), ih = h_prev.id(), ic = c_prev.id(), iW = w.W.id(),
                    ib = w.b.id();
  Var both = tape.record(
      std::move(out), {x, h_prev, c_prev, w.W, w.b},
      [ix, ih, ic, iW, ib, g = std::move(g)](Tape& t, std::size_t self) {
        const Matrix& grad = t.grad(self);
        const std::size_t h = g.c.size();
        const Matrix& cp = t.value(ic);
        Matrix dz(1, 4 * h);
        Matrix dc_prev(1, h);
        for (std::size_t k = 0; k < h; ++k) {
          const double dh = grad[k];
          const double dc = grad[h + k] + dh * g.o[k] * (1.0 - g.tanh_c[k] * g.tanh_c[k]);
          const double d_o = dh * g.tanh_c[k];
          dz[k] = dc * g.g[k] * g.i[k] * (1.0 - g.i[k]);
          dz[h + k] = dc * cp[k] * g.f[k] * (1.0 - g.f[k]);
          dz[2 * h + k] = dc * g.i[k] * (1.0 - g.g[k] * g.g[k]);
          dz[3 * h + k] = d_o * g.o[k] * (1.0 - g.o[k]);
          dc_prev[k] = dc * g.f[k];
        }
        const Matrix& xv = t.value(ix);
        const Matrix& hv = t.value(ih);
        const std::size_t d = xv.cols();
        if (t.needs_grad(iW)) {
          Matrix& gW = t.accum(iW);
          for (std::size_t r = 0; r < 4 * h; ++r) {
            const double dzr = dz[r];
            if (dzr == 0.0) continue;
            auto wr = gW.row(r);
            for (std::size_t k = 0; k < d; ++k) wr[k] += dzr * xv[k];
            for (std::size_t k = 0; k < h; ++k) wr[d + k] += dzr * hv[k];
          }
        }
        if (t.needs_grad(ib)) {
          Matrix& gb = t.accum(ib);
          for (std::size_t r = 0; r < 4 * h; ++r) gb[r] += dz[r];
        }
        const bool need_x = t.needs_grad(ix), need_h = t.needs_grad(ih);
        if (need_x || need_h) {
          const Matrix& W = t.value(iW);
          Matrix dxh(1, d + h);
          gemm_acc(dz, W, dxh);
          if (need_x) {
            Matrix& gx = t.accum(ix);
            for (std::size_t k = 0; k < d; ++k) gx[k] += dxh[k];
          }
          if (need_h) {
            Matrix& gh = t.accum(ih);
            for (std::size_t k = 0; k < h; ++k) gh[k] += dxh[d + k];
          }
        }
        if (t.needs_grad(ic)) {
          Matrix& gc = t.accum(ic);
          for (std::size_t k = 0; k < h; ++k) gc[k] += dc_prev[k];
        }
      });
  return {slice_cols(both, 0, h), slice_cols(both, h, h)};
}

Var bilstm(Var seq, const LstmVars& fw, const LstmVars& bw) {
  Tape& tape = seq.tape();
  const std::size_t T = seq.rows();
  if (T == 0) throw Error("empty sequence");
  std::vector<Var> xs;
  xs.reserve(T);
  for (std::size_t t = 0; t < T; ++t) xs.push_back(row(seq, t));

  auto run = [&](const LstmVars& w, bool reverse) {
    const std::size_t h = w.hidden();
    LstmCell s{tape.constant(Matrix(1, h)), tape.constant(Matrix(1, h))};
    std::vector<Var> hs(T);
    for (std::size_t step = 0; step < T; ++step) {
      const std::size_t t = reverse ? T - 1 - step : step;
      s = lstm_cell(xs[t], s.h, s.c, w);
      hs[t] = s.h;
    }
    return hs;
  };
  const std::vector<Var> f = run(fw, false);
  const std::vector<Var> b = run(bw, true);
  std::vector<Var> rows;
  rows.reserve(T);
  for (std::size_t t = 0; t < T; ++t) rows.push_back(concat_cols({f[t], b[t]}));
  return concat_rows(rows);
}

}  // namespace typesql
