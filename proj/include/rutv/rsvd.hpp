#pragma once

#include "rutv/matrix.hpp"

namespace rutv {

/// Rank-ell randomized SVD factors A ~ U diag(sigma) V^T.
struct RsvdFactors {
  Matrix U;  ///< m x ell, orthonormal columns
  std::vector<double> sigma;
  Matrix V;  ///< n x ell, orthonormal columns
  Index ell = 0;
  Index q_used = 0;
};

/// Randomized SVD driven by the leading ell columns of a caller-supplied
/// Gaussian matrix (n x k, k >= ell): Y = (A A^T)^q A G(:, 0:ell) with a thin
/// QR between every product, Q = orth(Y), SVD of Q^T A, U = Q W.
///
/// Sharing `g` with power_urv_from_start makes the two methods sample the
/// same subspace, which is what projector_gap checks.
RsvdFactors rsvd(const Matrix& a, const Matrix& g, Index ell, int q);

/// ||U1 U1^T A - U2 U2^T A||_F / ||A||_F. Column counts must match.
double projector_gap(const Matrix& u1, const Matrix& u2, const Matrix& a);

}  // namespace rutv
