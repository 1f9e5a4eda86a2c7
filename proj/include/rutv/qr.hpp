#pragma once

#include <vector>

#include "rutv/kernels.hpp"
#include "rutv/matrix.hpp"

namespace rutv {

/// Product of Householder reflectors H_1 H_2 ... H_k held in compact-WY
/// form Q = I - Y * Twy * Y^T.
///
/// Y is m x k, unit lower trapezoidal (Y(j,j) = 1, zero above the
/// diagonal). Twy is k x k upper triangular. A reflector that was skipped
/// for a numerically zero column has its Twy diagonal entry equal to zero.
struct QFactor {
  Matrix Y;
  Matrix Twy;

  Index dim() const { return Y.rows(); }
  Index reflectors() const { return Y.cols(); }
};

enum class Side { left, right };

struct QrResult {
  QFactor q;
  Matrix R;  ///< m x n upper trapezoidal
};

struct ThinQr {
  Matrix Q;  ///< m x n, orthonormal columns
  Matrix R;  ///< n x n upper triangular
};

struct PivotedQr {
  QFactor q;
  Matrix R;
  /// perm[j] is the index in A of the column that ended up in position j,
  /// so A(:, perm) = Q R.
  std::vector<Index> perm;
};

/// Unpivoted Householder QR, A = Q R with Q m x m orthogonal. Reflectors
/// are generated for the leading min(m, n) columns; a column whose
/// remaining norm is at most eps * ||A||_F gets the identity.
QrResult hqr_full(const Matrix& a);

/// Economy QR for m >= n: A = Q R with Q m x n orthonormal.
ThinQr hqr_thin(const Matrix& a);

/// Orthonormal basis of the columns of A (the Q of hqr_thin).
Matrix orthonormal_columns(const Matrix& a);

/// Q*B, Q^T*B, B*Q or B*Q^T with three gemm calls; Q is never formed.
Matrix apply_q(const QFactor& q, const Matrix& b, Side side, Trans trans);

/// Explicit m x m orthogonal matrix.
Matrix materialize(const QFactor& q);

/// Leading `cols` columns of Q.
Matrix leading_columns(const QFactor& q, Index cols);

/// Householder QR with Businger-Golub column pivoting. Partial column norms
/// are downdated after each step and recomputed from scratch once the
/// downdated value loses more than half the digits of the stored reference.
PivotedQr hqrcp(const Matrix& a);

/// Applies perm: out(:, j) = A(:, perm[j]).
Matrix permute_columns(const Matrix& a, const std::vector<Index>& perm);

}  // namespace rutv
