#include "rutv/power_urv.hpp"

#include <string>

#include "rutv/error.hpp"
#include "rutv/kernels.hpp"

namespace rutv {

namespace {

void check_shape(const Matrix& a) {
  if (a.rows() < a.cols()) {
    throw DimensionError("power_urv needs m >= n (factor the transpose), got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (a.cols() == 0) throw DimensionError("power_urv: empty matrix");
}

}  // namespace

UrvFactorization power_urv_from_start(const Matrix& a, int q, const Matrix& start) {
  check_shape(a);
  if (q < 0) throw ArgumentError("power_urv: q must be non-negative, got " + std::to_string(q));
  if (start.rows() != a.cols() || start.cols() != a.cols()) {
    throw DimensionError("power_urv: start matrix must be n x n");
  }
  // The last thin QR of the loop is taken as a full QR so V stays in
  // compact-WY form; for a square Y the two coincide.
  Matrix y = start;
  for (int i = 0; i < q; ++i) {
    const Matrix v = i == 0 ? y : orthonormal_columns(y);
    const Matrix v_hat = orthonormal_columns(gemm(1.0, a, v));
    y = gemm(1.0, a, v_hat, Trans::yes);
  }
  QrResult right = hqr_full(y);
  const Matrix a_hat = apply_q(right.q, a, Side::right, Trans::no);
  QrResult left = hqr_full(a_hat);
  return {std::move(left.q), std::move(left.R), std::move(right.q), static_cast<Index>(q)};
}

UrvFactorization power_urv(const Matrix& a, int q, RngStream& rng) {
  check_shape(a);
  if (q < 0) throw ArgumentError("power_urv: q must be non-negative, got " + std::to_string(q));
  const Matrix start = gaussian(a.cols(), a.cols(), rng);
  return power_urv_from_start(a, q, start);
}

UrvFactorization rurv(const Matrix& a, RngStream& rng) { return power_urv(a, 0, rng); }

}  // namespace rutv
