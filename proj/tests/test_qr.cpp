#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "rutv/error.hpp"
#include "rutv/matgen.hpp"
#include "rutv/qr.hpp"

using namespace rutv;

namespace {

Matrix padded_r(const QrResult& f) { return f.R; }

double qr_recon(const Matrix& a, const QrResult& f) {
  return frobenius_norm(a - apply_q(f.q, padded_r(f), Side::left, Trans::no)) / frobenius_norm(a);
}

}  // namespace

TEST_CASE("hqr_full of the identity") {
  const auto f = hqr_full(Matrix::identity(4));
  CHECK(th::max_abs_diff(materialize(f.q), Matrix::identity(4)) == 0.0);
  CHECK(f.R == Matrix::identity(4));
}

TEST_CASE("hqr_full of [3; 4]") {
  const auto f = hqr_full(Matrix::from_rows({{3}, {4}}));
  CHECK(std::abs(std::abs(f.R(0, 0)) - 5.0) <= 1e-15);
  CHECK(f.R(1, 0) == 0.0);
  const Matrix q = materialize(f.q);
  CHECK(std::abs(std::abs(q(0, 0)) - 0.6) <= 1e-15);
  CHECK(std::abs(std::abs(q(1, 0)) - 0.8) <= 1e-15);
}

TEST_CASE("hqr_full reconstruction and orthogonality") {
  RngStream rng(1);
  const Matrix a = gaussian(100, 60, rng);
  const auto f = hqr_full(a);
  CHECK(qr_recon(a, f) <= 1e-14);
  CHECK(orthogonality_defect(materialize(f.q)) <= 1e-13);
  CHECK(th::strictly_lower_zero(f.R, 0.0));
  CHECK(f.R.rows() == 100);
}

TEST_CASE("compact-WY structure") {
  RngStream rng(2);
  const auto f = hqr_full(gaussian(30, 12, rng));
  REQUIRE(f.q.reflectors() == 12);
  for (Index j = 0; j < 12; ++j) {
    CHECK(f.q.Y(j, j) == 1.0);
    for (Index i = 0; i < j; ++i) CHECK(f.q.Y(i, j) == 0.0);
    for (Index i = j + 1; i < 12; ++i) CHECK(f.q.Twy(i, j) == 0.0);
  }
  CHECK(orthogonality_defect(materialize(f.q)) <= 1e-13 * 30);
}

TEST_CASE("hqr_full on wide and square inputs") {
  RngStream rng(3);
  const Matrix wide = gaussian(5, 9, rng);
  const auto f = hqr_full(wide);
  CHECK(qr_recon(wide, f) <= 1e-14);
  CHECK(th::strictly_lower_zero(f.R, 0.0));
  const Matrix one = Matrix::from_rows({{-2.5}});
  CHECK(std::abs(hqr_full(one).R(0, 0)) == 2.5);
}

TEST_CASE("hqr_full skips numerically zero columns") {
  Matrix a(5, 3);
  a(0, 0) = 1.0;
  a(1, 0) = 2.0;
  a(2, 2) = 3.0;
  const auto f = hqr_full(a);
  CHECK(f.q.Twy(1, 1) == 0.0);
  CHECK(qr_recon(a, f) <= 1e-15);
  CHECK(orthogonality_defect(materialize(f.q)) <= 1e-14);
  const auto z = hqr_full(Matrix(4, 2));
  CHECK(materialize(z.q) == Matrix::identity(4));
}

TEST_CASE("hqr_thin") {
  RngStream rng(4);
  const Matrix a = gaussian(400, 50, rng);
  const auto t = hqr_thin(a);
  CHECK(t.Q.cols() == 50);
  CHECK(t.R.rows() == 50);
  CHECK(orthogonality_defect(t.Q) <= 1e-13);
  CHECK(frobenius_norm(a - gemm(1.0, t.Q, t.R)) <= 1e-13 * frobenius_norm(a));

  const Matrix orth = orthonormal_columns(gaussian(40, 6, rng));
  const auto o = hqr_thin(orth);
  CHECK(frobenius_norm(orth - gemm(1.0, th::projector(o.Q), orth)) <= 1e-13 * frobenius_norm(orth));

  Matrix e1(8, 1);
  e1(0, 0) = 1.0;
  const auto e = hqr_thin(e1);
  CHECK(std::abs(std::abs(e.R(0, 0)) - 1.0) <= 1e-15);
  CHECK(th::col_sign_diff(e.Q, e1) <= 1e-15);

  CHECK_THROWS_AS(hqr_thin(Matrix(2, 3)), DimensionError);
}

TEST_CASE("apply_q against materialized Q") {
  RngStream rng(5);
  const Matrix a = gaussian(50, 30, rng);
  const auto f = hqr_full(a);
  const Matrix q = materialize(f.q);
  CHECK(th::max_abs_diff(apply_q(f.q, Matrix::identity(50), Side::left, Trans::no), q) == 0.0);
  CHECK(th::max_abs_diff(apply_q(f.q, q, Side::left, Trans::yes), Matrix::identity(50)) <= 1e-13);

  const Matrix b = gaussian(50, 7, rng);
  CHECK(th::max_abs_diff(apply_q(f.q, b, Side::left, Trans::no), gemm(1.0, q, b)) <= 1e-13);
  CHECK(th::max_abs_diff(apply_q(f.q, b, Side::left, Trans::yes), gemm(1.0, q, b, Trans::yes)) <=
        1e-13);
  const Matrix c = gaussian(7, 50, rng);
  CHECK(th::max_abs_diff(apply_q(f.q, c, Side::right, Trans::no), gemm(1.0, c, q)) <= 1e-13);
  CHECK(th::max_abs_diff(apply_q(f.q, c, Side::right, Trans::yes),
                         gemm(1.0, c, q, Trans::no, Trans::yes)) <= 1e-13);

  Matrix e1(50, 1);
  e1(0, 0) = 1.0;
  CHECK(th::max_abs_diff(apply_q(f.q, e1, Side::left, Trans::no), q.cols_range(0, 1)) <= 1e-15);
  CHECK(th::max_abs_diff(leading_columns(f.q, 4), q.cols_range(0, 4)) <= 1e-15);

  CHECK_THROWS_AS(apply_q(f.q, Matrix(49, 2), Side::left, Trans::no), DimensionError);
  CHECK_THROWS_AS(apply_q(f.q, Matrix(2, 49), Side::right, Trans::no), DimensionError);
  CHECK_THROWS_AS(leading_columns(f.q, 51), DimensionError);
}

TEST_CASE("rank-deficient input leaves a zero trailing block") {
  RngStream rng(6);
  const Matrix a = th::low_rank(40, 25, 8, rng);
  const auto f = hqr_full(a);
  CHECK(frobenius_norm(f.R.block(8, 8, 32, 17)) <= 1e-12 * frobenius_norm(a));
  CHECK(qr_recon(a, f) <= 1e-13);
}

TEST_CASE("hqrcp pivot examples") {
  Matrix two(3, 2);
  two(0, 0) = 1.0;
  two(1, 1) = 2.0;
  CHECK(hqrcp(two).perm.front() == 1);

  const double d[] = {1.0, 10.0, 5.0};
  const auto f = hqrcp(Matrix::diagonal(d, 3, 3));
  CHECK(f.perm == std::vector<Index>{1, 2, 0});
  CHECK(std::abs(f.R(0, 0)) == 10.0);
  CHECK(std::abs(f.R(1, 1)) == 5.0);
  CHECK(std::abs(f.R(2, 2)) == 1.0);
}

TEST_CASE("hqrcp invariants on random matrices") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    RngStream rng(seed);
    const Matrix a = seed % 2 ? gaussian(60, 40, rng) : th::low_rank(50, 50, 20, rng);
    const auto f = hqrcp(a);
    const Matrix ap = permute_columns(a, f.perm);
    CHECK(frobenius_norm(ap - apply_q(f.q, f.R, Side::left, Trans::no)) <=
          1e-13 * frobenius_norm(a));
    CHECK(orthogonality_defect(materialize(f.q)) <= 1e-13 * a.rows());
    const Index k = std::min(a.rows(), a.cols());
    const double slack = 10 * 2.2e-16 * frobenius_norm(a);
    for (Index j = 1; j < k; ++j)
      CHECK(std::abs(f.R(j, j)) <= std::abs(f.R(j - 1, j - 1)) * (1 + 1e-14) + slack);

    // interlacing and Eckart-Young
    const auto sigma = singular_values(a);
    for (Index j = 0; j + 1 < k; j += 7) {
      const double smin = singular_values(f.R.block(0, 0, j + 1, j + 1)).back();
      CHECK(std::abs(f.R(j, j)) >= smin * (1 - 1e-12));
      CHECK(frobenius_norm(f.R.block(j + 1, j + 1, a.rows() - j - 1, a.cols() - j - 1)) >=
            eckart_young_error(sigma, j + 1, Norm::fro) - 1e-10);
    }
  }
}

TEST_CASE("hqrcp norm downdating survives graded columns") {
  // columns differ by many orders of magnitude, so the downdated norms cancel
  RngStream rng(7);
  Matrix a = gaussian(30, 20, rng);
  for (Index j = 0; j < 20; ++j)
    for (Index i = 0; i < 30; ++i) a(i, j) *= std::pow(10.0, -0.5 * static_cast<double>(j));
  const auto f = hqrcp(a);
  for (Index j = 1; j < 20; ++j) CHECK(std::abs(f.R(j, j)) <= std::abs(f.R(j - 1, j - 1)) * (1 + 1e-13));
  CHECK(frobenius_norm(permute_columns(a, f.perm) - apply_q(f.q, f.R, Side::left, Trans::no)) <=
        1e-13 * frobenius_norm(a));
}

TEST_CASE("hqrcp fails to reveal the rank of the Kahan matrix") {
  const Matrix k = gen_kahan(100, 1.2);
  const auto f = hqrcp(k);
  const double sn = singular_values(k).back();
  CHECK(std::abs(f.R(99, 99)) > 10.0 * sn);
}

TEST_CASE("permute_columns") {
  const Matrix a = Matrix::from_rows({{1, 2, 3}});
  CHECK(permute_columns(a, {2, 0, 1}) == Matrix::from_rows({{3, 1, 2}}));
  CHECK_THROWS_AS(permute_columns(a, {0, 1}), DimensionError);
}
