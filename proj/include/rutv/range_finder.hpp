#pragma once

#include "rutv/matrix.hpp"
#include "rutv/random.hpp"

namespace rutv {

/// Orthonormal n x b basis approximating the dominant row space of A.
struct RangeBasis {
  Matrix Q;
  Index samples_used = 0;  ///< b + p columns sketched
  Index power_iterations = 0;
};

/// Y = A^T G with G Gaussian m x b, then Q = thin-QR basis of Y.
RangeBasis range_basic(const Matrix& a, Index b, RngStream& rng);

/// Y = (A^T A)^q A^T G with G Gaussian m x (b + p), evaluated with a thin-QR
/// re-orthonormalization after every application of A or A^T. The last
/// product is returned as is, not orthonormalized. Requires b + p <= min(m, n).
Matrix range_power(const Matrix& a, Index b, Index p, Index q, RngStream& rng);

/// range_power followed by the leading b left singular vectors of Y.
RangeBasis range_power_basis(const Matrix& a, Index b, Index p, Index q, RngStream& rng);

}  // namespace rutv
