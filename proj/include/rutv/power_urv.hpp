#pragma once

#include "rutv/matrix.hpp"
#include "rutv/qr.hpp"
#include "rutv/random.hpp"

namespace rutv {

/// A = U R V^T with U (m x m) and V (n x n) kept in compact-WY form.
struct UrvFactorization {
  QFactor U;
  Matrix R;  ///< m x n upper trapezoidal
  QFactor V;
  Index q_used = 0;

  Matrix U_matrix() const { return materialize(U); }
  Matrix V_matrix() const { return materialize(V); }
};

/// powerURV for m >= n. Draws an n x n Gaussian start, runs q rounds of
/// {A V, thin QR, A^T V_hat, thin QR}, then takes the full QR of A V.
/// q = 0 is RURV. Throws ArgumentError for negative q or m < n.
UrvFactorization power_urv(const Matrix& a, int q, RngStream& rng);

/// Same as power_urv but with the Gaussian start supplied by the caller
/// (n x n). Used to compare against rsvd on an identical sketch.
UrvFactorization power_urv_from_start(const Matrix& a, int q, const Matrix& start);

/// power_urv with q = 0.
UrvFactorization rurv(const Matrix& a, RngStream& rng);

}  // namespace rutv
