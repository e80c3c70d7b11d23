#pragma once

#include <span>
#include <string>
#include <vector>

#include "typesql/numkernel/matrix.hpp"
#include "typesql/numkernel/param_store.hpp"
#include "typesql/numkernel/tape.hpp"

namespace typesql {

/// LSTM weights. W is 4h × (d_in + h) acting on [x; h_prev]; gate blocks are
/// ordered input, forget, candidate, output.
struct LstmWeights {
  Matrix W;
  std::vector<double> b;

  std::size_t hidden() const { return W.rows() / 4; }
  std::size_t input_dim() const { return W.cols() - hidden(); }

  static LstmWeights zeros(std::size_t input_dim, std::size_t hidden);
  static LstmWeights from_store(const ParamStore& store, const std::string& prefix);
};

struct LstmState {
  std::vector<double> h;
  std::vector<double> c;
};

LstmState lstm_step(std::span<const double> x, std::span<const double> h_prev,
                    std::span<const double> c_prev, const LstmWeights& w);

/// Row t is [forward hidden at t | backward hidden at t].
Matrix bilstm_encode(const std::vector<std::vector<double>>& seq, const LstmWeights& fw,
                     const LstmWeights& bw);

// Tape-level counterparts.

struct LstmVars {
  Var W;
  Var b;
  std::size_t hidden() const { return W.rows() / 4; }
};

void register_lstm(ParamStore& store, const std::string& prefix, std::size_t input_dim,
                   std::size_t hidden);
LstmVars bind_lstm(Tape& tape, ParamStore& store, const std::string& prefix);

struct LstmCell {
  Var h;
  Var c;
};

LstmCell lstm_cell(Var x, Var h_prev, Var c_prev, const LstmVars& w);
/// Encodes the rows of `seq` (T×d_in) into T×2h.
Var bilstm(Var seq, const LstmVars& fw, const LstmVars& bw);

}  // namespace typesql
