#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rutv/kernels.hpp"
#include "rutv/matrix.hpp"
#include "rutv/random.hpp"
#include "rutv/svd.hpp"

namespace th {

using namespace rutv;

// ||A - U T V^T||_F / ||A||_F
inline double recon(const Matrix& a, const Matrix& u, const Matrix& t, const Matrix& v) {
  const Matrix approx = gemm(1.0, gemm(1.0, u, t), v, Trans::no, Trans::yes);
  return frobenius_norm(a - approx) / frobenius_norm(a);
}

inline double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

// columns equal up to a per-column sign
inline double col_sign_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    double plus = 0.0, minus = 0.0;
    for (Index i = 0; i < a.rows(); ++i) {
      plus = std::max(plus, std::abs(a(i, j) - b(i, j)));
      minus = std::max(minus, std::abs(a(i, j) + b(i, j)));
    }
    worst = std::max(worst, std::min(plus, minus));
  }
  return worst;
}

inline Matrix projector(const Matrix& q) { return gemm(1.0, q, q, Trans::no, Trans::yes); }

inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::abs(b[i]));
  return worst;
}

// exactly rank r, m x n
inline Matrix low_rank(Index m, Index n, Index r, RngStream& rng) {
  return gemm(1.0, gaussian(m, r, rng), gaussian(r, n, rng));
}

inline bool strictly_lower_zero(const Matrix& r, double tol) {
  for (Index j = 0; j < r.cols(); ++j)
    for (Index i = j + 1; i < r.rows(); ++i)
      if (std::abs(r(i, j)) > tol) return false;
  return true;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace th
