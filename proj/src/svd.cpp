#include "rutv/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rutv/error.hpp"
#include "rutv/qr.hpp"

namespace rutv {

namespace {

constexpr int kMaxSweeps = 60;

double dot(const double* x, const double* y, Index len) {
  double s = 0.0;
  for (Index i = 0; i < len; ++i) s += x[i] * y[i];
  return s;
}

void rotate(double* x, double* y, Index len, double c, double s) {
  for (Index i = 0; i < len; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

// Orthogonalizes the columns of the square matrix w in place by plane
// rotations (Hestenes). If v is non-null the rotations are accumulated in it.
void jacobi_orthogonalize(Matrix& w, Matrix* v) {
  const Index m = w.rows();
  const Index n = w.cols();
  const double tol = std::sqrt(static_cast<double>(m)) * kMachineEps;
  std::vector<double> sq(n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (Index j = 0; j < n; ++j) sq[j] = dot(w.col(j), w.col(j), m);
    bool rotated = false;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double alpha = sq[p];
        const double beta = sq[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        const double gamma = dot(w.col(p), w.col(q), m);
        if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        rotate(w.col(p), w.col(q), m, c, s);
        if (v) rotate(v->col(p), v->col(q), v->rows(), c, s);
        sq[p] = alpha - t * gamma;
        sq[q] = beta + t * gamma;
      }
    }
    if (!rotated) return;
  }
  throw ConvergenceError("Jacobi SVD did not converge in " + std::to_string(kMaxSweeps) +
                         " sweeps");
}

// Replaces the columns listed in `missing` by unit vectors orthogonal to all
// other columns of u.
void complete_basis(Matrix& u, const std::vector<Index>& missing) {
  const Index m = u.rows();
  std::vector<bool> is_missing(u.cols(), false);
  for (Index j : missing) is_missing[j] = true;
  std::vector<double> cand(m);
  Index next_unit = 0;
  for (Index j : missing) {
    bool placed = false;
    while (!placed && next_unit < m) {
      std::fill(cand.begin(), cand.end(), 0.0);
      cand[next_unit++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (Index c = 0; c < u.cols(); ++c) {
          if (is_missing[c]) continue;
          const double s = dot(u.col(c), cand.data(), m);
          for (Index i = 0; i < m; ++i) cand[i] -= s * u(i, c);
        }
      }
      const double nrm = std::sqrt(dot(cand.data(), cand.data(), m));
      if (nrm > 0.5) {
        for (Index i = 0; i < m; ++i) u(i, j) = cand[i] / nrm;
        is_missing[j] = false;
        placed = true;
      }
    }
  }
}

struct SquareSvd {
  Matrix U;
  std::vector<double> sigma;
  Matrix V;
};

// SVD of a square matrix by one-sided Jacobi, vectors optional.
SquareSvd jacobi_square(Matrix w, bool vectors) {
  const Index n = w.cols();
  Matrix v = vectors ? Matrix::identity(n) : Matrix();
  jacobi_orthogonalize(w, vectors ? &v : nullptr);

  std::vector<double> norms(n);
  for (Index j = 0; j < n; ++j) norms[j] = std::sqrt(dot(w.col(j), w.col(j), w.rows()));
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return norms[a] > norms[b]; });

  SquareSvd out;
  out.sigma.resize(n);
  for (Index j = 0; j < n; ++j) out.sigma[j] = norms[order[j]];
  if (!vectors) return out;

  out.U = Matrix(w.rows(), n);
  out.V = Matrix(n, n);
  std::vector<Index> missing;
  for (Index j = 0; j < n; ++j) {
    const Index src = order[j];
    std::copy_n(v.col(src), n, out.V.col(j));
    if (norms[src] > 0.0) {
      for (Index i = 0; i < w.rows(); ++i) out.U(i, j) = w(i, src) / norms[src];
    } else {
      missing.push_back(j);
    }
  }
  if (!missing.empty()) complete_basis(out.U, missing);

  for (Index j = 0; j < n; ++j) {
    Index arg = 0;
    for (Index i = 1; i < n; ++i)
      if (std::abs(out.V(i, j)) > std::abs(out.V(arg, j))) arg = i;
    if (out.V(arg, j) < 0.0) {
      for (Index i = 0; i < n; ++i) out.V(i, j) = -out.V(i, j);
      for (Index i = 0; i < out.U.rows(); ++i) out.U(i, j) = -out.U(i, j);
    }
  }
  return out;
}

// Handles m >= n: Jacobi on the n x n triangular factor of A.
SvdTriple svd_tall(const Matrix& a, SvdMode mode) {
  const Index m = a.rows();
  const Index n = a.cols();
  QrResult f = hqr_full(a);
  SquareSvd core = jacobi_square(f.R.block(0, 0, n, n), true);
  SvdTriple out;
  out.sigma = std::move(core.sigma);
  out.V = std::move(core.V);
  out.thin = mode == SvdMode::thin;
  Matrix padded(m, mode == SvdMode::full ? m : n);
  padded.set_block(0, 0, core.U);
  for (Index j = n; j < padded.cols(); ++j) padded(j, j) = 1.0;
  out.U = apply_q(f.q, padded, Side::left, Trans::no);
  return out;
}

}  // namespace

SvdTriple svd_dense(const Matrix& a, SvdMode mode) {
  if (a.rows() >= a.cols()) return svd_tall(a, mode);
  SvdTriple t = svd_tall(a.transposed(), mode);
  std::swap(t.U, t.V);
  // Re-normalize signs against the new V.
  for (Index j = 0; j < t.V.cols(); ++j) {
    Index arg = 0;
    for (Index i = 1; i < t.V.rows(); ++i)
      if (std::abs(t.V(i, j)) > std::abs(t.V(arg, j))) arg = i;
    if (t.V(arg, j) < 0.0) {
      for (Index i = 0; i < t.V.rows(); ++i) t.V(i, j) = -t.V(i, j);
      if (j < t.U.cols())
        for (Index i = 0; i < t.U.rows(); ++i) t.U(i, j) = -t.U(i, j);
    }
  }
  return t;
}

std::vector<double> singular_values(const Matrix& a) {
  const Matrix& tall = a.rows() >= a.cols() ? a : a.transposed();
  if (tall.cols() == 0) return {};
  const Index n = tall.cols();
  QrResult f = hqr_full(tall);
  return jacobi_square(f.R.block(0, 0, n, n), false).sigma;
}

Matrix svd_tall_thin_left_leading(const Matrix& y, Index count) {
  const Index n = y.rows();
  const Index w = y.cols();
  if (n < w) throw DimensionError("svd_tall_thin_left: needs rows >= cols");
  if (count > w) throw ArgumentError("svd_tall_thin_left: more columns requested than width");
  QrResult f = hqr_full(y);
  const SvdTriple small = svd_dense(f.R.block(0, 0, w, w), SvdMode::full);
  Matrix padded(n, count);
  padded.set_block(0, 0, small.U.cols_range(0, count));
  return apply_q(f.q, padded, Side::left, Trans::no);
}

Matrix svd_tall_thin_left(const Matrix& y) {
  const Index n = y.rows();
  const Index w = y.cols();
  if (n < w) throw DimensionError("svd_tall_thin_left: needs rows >= cols");
  QrResult f = hqr_full(y);
  const SvdTriple small = svd_dense(f.R.block(0, 0, w, w), SvdMode::full);
  Matrix padded = Matrix::identity(n);
  padded.set_block(0, 0, small.U);
  return apply_q(f.q, padded, Side::left, Trans::no);
}

double eckart_young_error(const std::vector<double>& sigma, Index k, Norm norm) {
  if (k >= sigma.size()) {
    throw ArgumentError("eckart_young_error: k=" + std::to_string(k) + " with " +
                        std::to_string(sigma.size()) + " singular values");
  }
  if (norm == Norm::spectral) return sigma[k];
  double s = 0.0;
  for (Index j = sigma.size(); j-- > k;) s += sigma[j] * sigma[j];
  return std::sqrt(s);
}

}  // namespace rutv
