#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "typesql/execeval/table.hpp"
#include "typesql/numkernel/matrix.hpp"

namespace typesql::test {

inline Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(r, c);
  for (auto& x : m.data()) x = u(rng);
  return m;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  return random_matrix(1, n, rng, scale).data();
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) return INFINITY;
  return max_abs_diff(a.data(), b.data());
}

// Naive dense helpers for oracles; deliberately loop-based.
using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline Mat to_mat(const Matrix& m) {
  Mat out(m.rows(), Vec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

inline Vec mat_vec(const Mat& A, const Vec& x) {
  Vec y(A.size(), 0.0);
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
  return y;
}

inline Vec vadd(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec vtanh(Vec a) {
  for (auto& x : a) x = std::tanh(x);
  return a;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec naive_softmax(const Vec& s) {
  double z = 0.0;
  Vec out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) z += std::exp(s[i]);
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = std::exp(s[i]) / z;
  return out;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline const char* kFigure1Question = "What spoofed title had Mort Drucker as the artist in issue 88.5?";

inline Table figure1_table() {
  Table t;
  t.schema.id = "mad_spoofs";
  t.schema.columns = {{"Date", ColumnKind::Text},
                      {"Issue", ColumnKind::Real},
                      {"Spoofed Title", ColumnKind::Text},
                      {"Artist", ColumnKind::Text},
                      {"Writer", ColumnKind::Text}};
  t.rows = {{std::string("April 1964"), 86.0, std::string("The Pink Panther"), std::string("Mort Drucker"),
             std::string("Larry Siegel")},
            {std::string("June 1964"), 88.5, std::string("Dr. Kildare"), std::string("Mort Drucker"),
             std::string("Stan Hart")},
            {std::string("July 1964"), 89.0, std::string("The Defenders"), std::string("Angelo Torres"),
             std::string("Larry Siegel")}};
  return t;
}

}  // namespace typesql::test
