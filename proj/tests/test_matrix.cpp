#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "rutv/error.hpp"
#include "rutv/qr.hpp"

using namespace rutv;

TEST_CASE("gaussian: same seed, same draws") {
  RngStream a(42), b(42);
  CHECK(gaussian(3, 2, a) == gaussian(3, 2, b));
  RngStream c(43);
  RngStream d(42);
  CHECK_FALSE(gaussian(3, 2, c) == gaussian(3, 2, d));
}

TEST_CASE("gaussian: zero dimension throws") {
  RngStream rng(1);
  CHECK_THROWS_AS(gaussian(0, 3, rng), DimensionError);
  CHECK_THROWS_AS(gaussian(3, 0, rng), DimensionError);
}

TEST_CASE("gaussian: 200x100 has full rank") {
  RngStream rng(5);
  const auto s = singular_values(gaussian(200, 100, rng));
  REQUIRE(s.size() == 100);
  CHECK(s.back() > 1e-3);
}

TEST_CASE("gaussian: sample moments of 1e6 draws") {
  RngStream rng(2024);
  const Matrix g = gaussian(1000, 1000, rng);
  double sum = 0.0, sq = 0.0;
  for (double x : g.values()) {
    sum += x;
    sq += x * x;
  }
  const double n = static_cast<double>(g.size());
  const double mean = sum / n;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(sq / n - mean * mean - 1.0) < 0.01);
}

TEST_CASE("gaussian: square draws invertible in 100 trials") {
  int invertible = 0;
  for (int t = 0; t < 100; ++t) {
    RngStream rng(1000 + t);
    const auto s = singular_values(gaussian(12, 12, rng));
    if (s.back() > 1e-10 * s.front()) ++invertible;
  }
  CHECK(invertible == 100);
}

TEST_CASE("gemm: hand examples") {
  RngStream rng(3);
  const Matrix b = gaussian(3, 4, rng);
  CHECK(gemm(1.0, Matrix::identity(3), b) == b);

  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix x = Matrix::from_rows({{5}, {6}});
  CHECK(gemm(1.0, a, x) == Matrix::from_rows({{17}, {39}}));

  const Matrix v = Matrix::from_rows({{3}, {4}});
  CHECK(gemm(1.0, v, v, Trans::yes, Trans::no) == Matrix::from_rows({{25}}));
  CHECK(gemm(-2.0, v, v, Trans::yes, Trans::no)(0, 0) == -50.0);
}

TEST_CASE("gemm: transpose flags agree with explicit transposes") {
  RngStream rng(4);
  const Matrix a = gaussian(5, 7, rng);
  const Matrix b = gaussian(5, 3, rng);
  const Matrix ref = gemm(1.0, a.transposed(), b);
  CHECK(th::max_abs_diff(gemm(1.0, a, b, Trans::yes), ref) <= 1e-14);
  const Matrix c = gaussian(3, 7, rng);
  CHECK(th::max_abs_diff(gemm(1.0, a, c, Trans::no, Trans::yes), gemm(1.0, a, c.transposed())) <=
        1e-14);
  const Matrix d = gaussian(3, 5, rng);
  CHECK(th::max_abs_diff(gemm(1.0, a, d, Trans::yes, Trans::yes),
                         gemm(1.0, a.transposed(), d.transposed())) <= 1e-14);
}

TEST_CASE("gemm: dimension mismatch") {
  CHECK_THROWS_AS(gemm(1.0, Matrix(2, 3), Matrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(gemm(1.0, Matrix(2, 3), Matrix(3, 2), Trans::yes), DimensionError);
  CHECK(gemm(1.0, Matrix(2, 0), Matrix(0, 3)) == Matrix(2, 3));
}

TEST_CASE("gemm: associativity") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RngStream rng(seed);
    const Matrix a = gaussian(6, 4, rng), b = gaussian(4, 5, rng), c = gaussian(5, 3, rng);
    const Matrix left = gemm(1.0, gemm(1.0, a, b), c);
    const Matrix right = gemm(1.0, a, gemm(1.0, b, c));
    CHECK(frobenius_norm(left - right) <= 1e-12 * frobenius_norm(left));
  }
}

TEST_CASE("frobenius_norm examples") {
  CHECK(frobenius_norm(Matrix::from_rows({{3, 4}})) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(frobenius_norm(Matrix::identity(7)) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-15));
  CHECK(frobenius_norm(Matrix(4, 5)) == 0.0);
  CHECK(frobenius_norm(Matrix()) == 0.0);
  // no overflow or underflow in the scaled sum
  CHECK(frobenius_norm(Matrix::from_rows({{3e200, 4e200}})) ==
        doctest::Approx(5e200).epsilon(1e-15));
  CHECK(frobenius_norm(Matrix::from_rows({{3e-200, 4e-200}})) ==
        doctest::Approx(5e-200).epsilon(1e-15));
}

TEST_CASE("spectral_norm examples") {
  const double d[] = {1.0, 0.5, 0.1};
  CHECK(spectral_norm(Matrix::diagonal(d, 3, 3)) == doctest::Approx(1.0).epsilon(1e-15));

  RngStream rng(8);
  const Matrix q = materialize(hqr_full(gaussian(20, 20, rng)).q);
  CHECK(std::abs(spectral_norm(q) - 1.0) <= 1e-12);

  Matrix u(5, 1), v(4, 1);
  u(0, 0) = 3.0;
  v(1, 0) = 1.2;
  v(3, 0) = 1.6;
  // rotate u so the rank-1 matrix is dense
  const Matrix uq = apply_q(hqr_full(gaussian(5, 5, rng)).q, u, Side::left, Trans::no);
  CHECK(std::abs(spectral_norm(gemm(1.0, uq, v, Trans::no, Trans::yes)) - 6.0) <= 1e-12);
}

TEST_CASE("norm relations on random matrices") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    RngStream rng(seed);
    const Matrix a = gaussian(50, 30, rng);
    const auto s = singular_values(a);
    double sq = 0.0;
    for (double x : s) sq += x * x;
    const double fro2 = frobenius_norm_squared(a);
    CHECK(std::abs(fro2 - sq) <= 1e-10 * fro2);

    const double two = spectral_norm(a), fro = frobenius_norm(a);
    CHECK(two <= fro);
    CHECK(fro <= std::sqrt(30.0) * two);
  }
}

TEST_CASE("block access") {
  Matrix a = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  CHECK(a.block(0, 1, 2, 2) == Matrix::from_rows({{2, 3}, {5, 6}}));
  CHECK(a.block(1, 3, 1, 0).cols() == 0);
  CHECK_THROWS_AS(a.block(1, 1, 2, 1), DimensionError);
  a.set_block(1, 0, Matrix::from_rows({{7, 8}}));
  CHECK(a == Matrix::from_rows({{1, 2, 3}, {7, 8, 6}}));
  a.set_zero_block(0, 1, 2, 2);
  CHECK(a == Matrix::from_rows({{1, 0, 0}, {7, 0, 0}}));
  CHECK(a.transposed() == Matrix::from_rows({{1, 7}, {0, 0}, {0, 0}}));
  CHECK(hcat(Matrix::identity(2), Matrix(2, 1)).cols() == 3);
  CHECK_THROWS_AS(hcat(Matrix(2, 1), Matrix(3, 1)), DimensionError);
  CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(Matrix(2, 2) + Matrix(2, 3), DimensionError);
}

TEST_CASE("orthogonality_defect") {
  CHECK(orthogonality_defect(Matrix::identity(4)) == 0.0);
  CHECK(orthogonality_defect(2.0 * Matrix::identity(2)) == doctest::Approx(std::sqrt(18.0)));
}

TEST_CASE("text format round trip is bitwise") {
  RngStream rng(11);
  Matrix a = gaussian(7, 5, rng);
  a(0, 0) = 1e-300;
  a(1, 1) = -0.1;
  a(2, 2) = 1.0 / 3.0;
  a(3, 3) = 0.0;
  std::stringstream ss;
  write_matrix(ss, a);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "7 5");
  ss.seekg(0);
  CHECK(read_matrix(ss) == a);

  std::stringstream empty;
  write_matrix(empty, Matrix(0, 3));
  CHECK(read_matrix(empty) == Matrix(0, 3));
}

TEST_CASE("text format rejects malformed input") {
  std::stringstream truncated("2 2\n1 2\n3\n");
  CHECK_THROWS(read_matrix(truncated));
  std::stringstream bad("1 1\nabc\n");
  CHECK_THROWS(read_matrix(bad));
  std::stringstream nonfinite("1 1\ninf\n");
  CHECK_THROWS(read_matrix(nonfinite));
  std::stringstream header("x y\n");
  CHECK_THROWS(read_matrix(header));
  CHECK_THROWS(load_matrix("/nonexistent/dir/none.mtx"));
}
