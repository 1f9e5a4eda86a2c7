#pragma once

#include <vector>

#include "rutv/matrix.hpp"

namespace rutv {

enum class SvdMode { full, thin };
enum class Norm { spectral, fro };

/// A = U diag(sigma) V^T with sigma sorted descending.
///
/// Full: U is m x m, V is n x n. Thin: U is m x r, V is n x r with
/// r = min(m, n). Signs are fixed so the largest-magnitude entry of every
/// V column (first one on ties) is positive.
struct SvdTriple {
  Matrix U;
  std::vector<double> sigma;
  Matrix V;
  bool thin = false;
};

/// One-sided Jacobi SVD. Rectangular inputs are first reduced to a square
/// triangular factor with Householder QR. Throws ConvergenceError if the
/// sweep cap is reached.
SvdTriple svd_dense(const Matrix& a, SvdMode mode = SvdMode::full);

/// Singular values only, descending.
std::vector<double> singular_values(const Matrix& a);

/// Left singular vectors of a tall thin Y (n x w, n >= w) as an n x n
/// orthogonal W = Q blockdiag(U_hat, I), where [Q, R] = hqr_full(Y) and
/// U_hat holds the left singular vectors of R(0:w, :).
Matrix svd_tall_thin_left(const Matrix& y);

/// Leading `count` columns of svd_tall_thin_left(y), count <= w.
Matrix svd_tall_thin_left_leading(const Matrix& y, Index count);

/// Best rank-k error from singular values: sigma_{k+1} (spectral) or the
/// root-sum-square of the tail (Frobenius). Requires k < sigma.size().
double eckart_young_error(const std::vector<double>& sigma, Index k, Norm norm);

}  // namespace rutv
