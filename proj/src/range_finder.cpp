#include "rutv/range_finder.hpp"

#include <algorithm>
#include <string>

#include "rutv/error.hpp"
#include "rutv/kernels.hpp"
#include "rutv/qr.hpp"
#include "rutv/svd.hpp"

namespace rutv {

RangeBasis range_basic(const Matrix& a, Index b, RngStream& rng) {
  if (b == 0 || b > a.cols()) throw ArgumentError("range_basic: b must be in [1, n]");
  const Matrix g = gaussian(a.rows(), b, rng);
  const Matrix y = gemm(1.0, a, g, Trans::yes);
  return {orthonormal_columns(y), b, 0};
}

Matrix range_power(const Matrix& a, Index b, Index p, Index q, RngStream& rng) {
  const Index width = b + p;
  if (b == 0 || width > std::min(a.rows(), a.cols())) {
    throw ArgumentError("range_power: need 1 <= b and b + p <= min(m, n), got b=" +
                        std::to_string(b) + " p=" + std::to_string(p));
  }
  const Matrix g = gaussian(a.rows(), width, rng);
  Matrix y = gemm(1.0, a, g, Trans::yes);
  for (Index i = 0; i < q; ++i) {
    const Matrix x = gemm(1.0, a, orthonormal_columns(y));
    y = gemm(1.0, a, orthonormal_columns(x), Trans::yes);
  }
  return y;
}

RangeBasis range_power_basis(const Matrix& a, Index b, Index p, Index q, RngStream& rng) {
  const Matrix y = range_power(a, b, p, q, rng);
  return {svd_tall_thin_left_leading(y, b), b + p, q};
}

}  // namespace rutv
