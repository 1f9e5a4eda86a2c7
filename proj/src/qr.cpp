#include "rutv/qr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rutv/error.hpp"

namespace rutv {

namespace {

double column_norm(const double* x, Index len) {
  double s = 0.0;
  for (Index i = 0; i < len; ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

// Householder reflector annihilating W(j+1:m, j). The Householder vector is
// written to Y(:, j) with Y(j, j) = 1; W(j:m, j) becomes (beta, 0, ..., 0).
// Returns tau, or 0 when the column is treated as numerically zero.
double make_reflector(Matrix& w, Index j, double zero_tol, Matrix& y) {
  const Index m = w.rows();
  const Index len = m - j;
  double* x = w.col(j) + j;
  y(j, j) = 1.0;
  const double norm = column_norm(x, len);
  if (norm <= zero_tol) {
    std::fill(x + 1, x + len, 0.0);
    return 0.0;
  }
  const double x0 = x[0];
  if (column_norm(x + 1, len - 1) == 0.0) return 0.0;
  const double beta = -std::copysign(norm, x0);
  const double scale = 1.0 / (x0 - beta);
  double* v = y.col(j) + j;
  for (Index i = 1; i < len; ++i) {
    v[i] = x[i] * scale;
    x[i] = 0.0;
  }
  x[0] = beta;
  return (beta - x0) / beta;
}

// W(j:m, c) <- (I - tau v v^T) W(j:m, c) for c in [first, last).
void apply_reflector(Matrix& w, Index j, double tau, const Matrix& y, Index first, Index last) {
  if (tau == 0.0) return;
  const Index len = w.rows() - j;
  const double* v = y.col(j) + j;
  for (Index c = first; c < last; ++c) {
    double* x = w.col(c) + j;
    double s = 0.0;
    for (Index i = 0; i < len; ++i) s += v[i] * x[i];
    s *= tau;
    for (Index i = 0; i < len; ++i) x[i] -= s * v[i];
  }
}

// Appends reflector j to the triangular factor: Twy(0:j, j) = -tau Twy(0:j,0:j) Y^T v_j.
void extend_twy(Matrix& twy, const Matrix& y, Index j, double tau) {
  twy(j, j) = tau;
  if (tau == 0.0 || j == 0) return;
  const Index m = y.rows();
  std::vector<double> z(j, 0.0);
  const double* v = y.col(j);
  for (Index r = 0; r < j; ++r) {
    const double* yr = y.col(r);
    double s = 0.0;
    for (Index i = j; i < m; ++i) s += yr[i] * v[i];
    z[r] = s;
  }
  for (Index r = 0; r < j; ++r) {
    double s = 0.0;
    for (Index c = r; c < j; ++c) s += twy(r, c) * z[c];
    twy(r, j) = -tau * s;
  }
}

QrResult householder_qr(const Matrix& a, std::vector<Index>* perm) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index k = std::min(m, n);
  Matrix w = a;
  QrResult out{QFactor{Matrix(m, k), Matrix(k, k)}, Matrix()};
  const double zero_tol = kMachineEps * frobenius_norm(a);

  // Column-norm bookkeeping for pivoting: current (downdated) and reference norms.
  std::vector<double> partial, reference;
  if (perm) {
    perm->resize(n);
    std::iota(perm->begin(), perm->end(), Index{0});
    partial.resize(n);
    for (Index c = 0; c < n; ++c) partial[c] = column_norm(w.col(c), m);
    reference = partial;
  }
  const double downdate_tol = std::sqrt(kMachineEps);

  for (Index j = 0; j < k; ++j) {
    if (perm) {
      const auto best = std::max_element(partial.begin() + j, partial.end());
      const Index p = static_cast<Index>(best - partial.begin());
      if (p != j) {
        std::swap_ranges(w.col(j), w.col(j) + m, w.col(p));
        std::swap((*perm)[j], (*perm)[p]);
        std::swap(partial[j], partial[p]);
        std::swap(reference[j], reference[p]);
      }
    }
    const double tau = make_reflector(w, j, zero_tol, out.q.Y);
    apply_reflector(w, j, tau, out.q.Y, j + 1, n);
    extend_twy(out.q.Twy, out.q.Y, j, tau);

    if (perm) {
      for (Index c = j + 1; c < n; ++c) {
        if (partial[c] == 0.0) continue;
        const double ratio = std::abs(w(j, c)) / partial[c];
        const double shrink = std::max(0.0, (1.0 - ratio) * (1.0 + ratio));
        const double rel = partial[c] / reference[c];
        if (shrink * rel * rel <= downdate_tol) {
          partial[c] = column_norm(w.col(c) + j + 1, m - j - 1);
          reference[c] = partial[c];
        } else {
          partial[c] *= std::sqrt(shrink);
        }
      }
    }
  }
  out.R = std::move(w);
  return out;
}

}  // namespace

QrResult hqr_full(const Matrix& a) { return householder_qr(a, nullptr); }

ThinQr hqr_thin(const Matrix& a) {
  if (a.rows() < a.cols()) {
    throw DimensionError("hqr_thin needs rows >= cols, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  QrResult f = hqr_full(a);
  const Index n = a.cols();
  return {leading_columns(f.q, n), f.R.block(0, 0, n, n)};
}

Matrix orthonormal_columns(const Matrix& a) { return hqr_thin(a).Q; }

Matrix apply_q(const QFactor& q, const Matrix& b, Side side, Trans trans) {
  const Index m = q.dim();
  const Trans tt = trans;
  if (side == Side::left) {
    if (b.rows() != m) {
      throw DimensionError("apply_q(left): B has " + std::to_string(b.rows()) +
                           " rows, Q is " + std::to_string(m));
    }
    // Q B = B - Y (Twy (Y^T B)); Q^T B uses Twy^T.
    const Matrix ytb = gemm(1.0, q.Y, b, Trans::yes, Trans::no);
    const Matrix tw = gemm(1.0, q.Twy, ytb, tt, Trans::no);
    return b - gemm(1.0, q.Y, tw);
  }
  if (b.cols() != m) {
    throw DimensionError("apply_q(right): B has " + std::to_string(b.cols()) +
                         " cols, Q is " + std::to_string(m));
  }
  // B Q = B - ((B Y) Twy) Y^T; B Q^T uses Twy^T.
  const Matrix by = gemm(1.0, b, q.Y);
  const Matrix bt = gemm(1.0, by, q.Twy, Trans::no, tt);
  return b - gemm(1.0, bt, q.Y, Trans::no, Trans::yes);
}

Matrix leading_columns(const QFactor& q, Index cols) {
  if (cols > q.dim()) throw DimensionError("leading_columns: too many columns requested");
  Matrix e(q.dim(), cols);
  for (Index j = 0; j < cols; ++j) e(j, j) = 1.0;
  return apply_q(q, e, Side::left, Trans::no);
}

Matrix materialize(const QFactor& q) { return leading_columns(q, q.dim()); }

PivotedQr hqrcp(const Matrix& a) {
  std::vector<Index> perm;
  QrResult f = householder_qr(a, &perm);
  return {std::move(f.q), std::move(f.R), std::move(perm)};
}

Matrix permute_columns(const Matrix& a, const std::vector<Index>& perm) {
  if (perm.size() != a.cols()) throw DimensionError("permute_columns: permutation length");
  Matrix out(a.rows(), a.cols());
  for (Index j = 0; j < perm.size(); ++j) {
    std::copy_n(a.col(perm[j]), a.rows(), out.col(j));
  }
  return out;
}

}  // namespace rutv
