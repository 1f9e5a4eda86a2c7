#include "rutv/rsvd.hpp"

#include <algorithm>
#include <string>

#include "rutv/error.hpp"
#include "rutv/kernels.hpp"
#include "rutv/qr.hpp"
#include "rutv/svd.hpp"

namespace rutv {

RsvdFactors rsvd(const Matrix& a, const Matrix& g, Index ell, int q) {
  if (q < 0) throw ArgumentError("rsvd: q must be non-negative");
  if (ell == 0 || ell > std::min(a.rows(), a.cols())) {
    throw ArgumentError("rsvd: ell=" + std::to_string(ell) + " outside [1, min(m, n)]");
  }
  if (g.rows() != a.cols() || g.cols() < ell) {
    throw DimensionError("rsvd: sketch must be n x k with k >= ell");
  }
  Matrix y = gemm(1.0, a, g.cols_range(0, ell));
  for (int i = 0; i < q; ++i) {
    const Matrix z = gemm(1.0, a, orthonormal_columns(y), Trans::yes);
    y = gemm(1.0, a, orthonormal_columns(z));
  }
  const Matrix basis = orthonormal_columns(y);
  const Matrix small = gemm(1.0, basis, a, Trans::yes);
  SvdTriple s = svd_dense(small, SvdMode::thin);
  return {gemm(1.0, basis, s.U), std::move(s.sigma), std::move(s.V), ell, static_cast<Index>(q)};
}

double projector_gap(const Matrix& u1, const Matrix& u2, const Matrix& a) {
  if (u1.cols() != u2.cols()) throw ArgumentError("projector_gap: column counts differ");
  if (u1.rows() != a.rows() || u2.rows() != a.rows()) {
    throw ArgumentError("projector_gap: basis rows must match A");
  }
  const Matrix p1 = gemm(1.0, u1, gemm(1.0, u1, a, Trans::yes));
  const Matrix p2 = gemm(1.0, u2, gemm(1.0, u2, a, Trans::yes));
  const double na = frobenius_norm(a);
  return na == 0.0 ? 0.0 : frobenius_norm(p1 - p2) / na;
}

}  // namespace rutv
