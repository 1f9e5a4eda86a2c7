#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "rutv/error.hpp"
#include "rutv/matgen.hpp"
#include "rutv/qr.hpp"

using namespace rutv;

namespace {

double asymmetry(const Matrix& a) { return frobenius_norm(a - a.transposed()) / frobenius_norm(a); }

}  // namespace

TEST_CASE("fast decay spectrum") {
  RngStream rng(1);
  const auto g = gen_fast_decay(400, 1e-5, rng);
  REQUIRE(g.sigma_true.size() == 400);
  CHECK(g.sigma_true.front() == 1.0);
  CHECK(g.sigma_true.back() == 1e-5);
  CHECK(std::abs(g.sigma_true[199] - 3.2e-3) <= 0.01e-3);
  CHECK(std::abs(g.sigma_true[199] - std::pow(1e-5, 199.0 / 399.0)) <= 1e-16);
  CHECK(th::max_rel_diff(singular_values(g.A), g.sigma_true) <= 1e-11);
}

TEST_CASE("s-shaped spectrum") {
  RngStream rng(2);
  const auto g = gen_s_shaped(200, rng);
  const auto& d = g.sigma_true;
  CHECK(d.front() >= 0.9);
  CHECK(d.front() <= 1.1);
  CHECK(std::abs(d.back() - 1e-2) <= 1e-12);
  for (Index i = 1; i < d.size(); ++i) CHECK(d[i] <= d[i - 1]);
  // plateau, drop, floor
  CHECK(d[20] > 0.9);
  CHECK(d[120] < 0.02);
  CHECK(th::max_rel_diff(singular_values(g.A), d) <= 1e-11);
}

TEST_CASE("fast decay and s-shaped share U and V for the same seed") {
  RngStream r1(3), r2(3);
  const Matrix a = gen_fast_decay(60, 1e-5, r1).A;
  const Matrix b = gen_s_shaped(60, r2).A;
  // A^T B = V D1 D2 V^T and A B^T = U D1 D2 U^T are symmetric only if the factors agree
  CHECK(asymmetry(gemm(1.0, a, b, Trans::yes)) <= 1e-12);
  CHECK(asymmetry(gemm(1.0, a, b, Trans::no, Trans::yes)) <= 1e-12);
  RngStream r3(4);
  const Matrix c = gen_s_shaped(60, r3).A;
  CHECK(asymmetry(gemm(1.0, a, c, Trans::yes)) > 1e-3);
}

TEST_CASE("BIE matrix") {
  const Matrix a = gen_bie(400);
  CHECK(asymmetry(a) <= 1e-12);
  CHECK(gen_bie(400) == a);
  const auto s = singular_values(a);
  CHECK(s.front() / s.back() >= 1e3);
  // convolution structure on the circle: entries depend only on |i - j| mod n
  CHECK(a(3, 10) == a(10, 3));
  CHECK(std::abs(a(0, 7) - a(50, 57)) <= 1e-15 * std::abs(a(0, 7)));
  CHECK_THROWS_AS(gen_bie(15), ArgumentError);
}

TEST_CASE("Kahan matrix") {
  const double theta = std::acos(0.6);
  const Matrix k = gen_kahan(3, theta);
  CHECK(k(0, 0) == 1.0);
  CHECK(std::abs(k(0, 1) + 0.6) <= 1e-15);
  CHECK(std::abs(k(1, 1) - 0.8) <= 1e-15);
  CHECK(std::abs(k(1, 2) + 0.8 * 0.6) <= 1e-15);
  CHECK(std::abs(k(2, 2) - 0.64) <= 1e-15);
  const Matrix big = gen_kahan(100, 1.2);
  CHECK(th::strictly_lower_zero(big, 0.0));
  CHECK(std::abs(hqrcp(big).R(99, 99)) > 10.0 * singular_values(big).back());
  CHECK_THROWS_AS(gen_kahan(5, 0.0), ArgumentError);
  CHECK_THROWS_AS(gen_kahan(5, 2.0), ArgumentError);
}

TEST_CASE("generator argument checks") {
  RngStream rng(5);
  CHECK_THROWS_AS(gen_fast_decay(1, 1e-5, rng), ArgumentError);
  CHECK_THROWS_AS(gen_fast_decay(10, 1.0, rng), ArgumentError);
  CHECK_THROWS_AS(gen_fast_decay(10, 0.0, rng), ArgumentError);
  CHECK_THROWS_AS(gen_s_shaped(7, rng), ArgumentError);
}

TEST_CASE("generate from a spec") {
  MatrixSpec spec;
  spec.kind = MatrixKind::fast_decay;
  spec.n = 50;
  spec.seed = 9;
  RngStream rng(9);
  const auto direct = gen_fast_decay(50, 1e-5, rng);
  const auto g = generate(spec);
  CHECK(g.A == direct.A);
  CHECK(g.sigma_true == direct.sigma_true);

  spec.kind = MatrixKind::gaussian;
  const auto gg = generate(spec);
  CHECK(gg.A.rows() == 50);
  CHECK(gg.sigma_true.empty());
  CHECK(generate(spec).A == gg.A);

  spec.kind = MatrixKind::kahan;
  spec.theta = 1.1;
  CHECK(generate(spec).A == gen_kahan(50, 1.1));
  spec.kind = MatrixKind::bie;
  CHECK(generate(spec).A == gen_bie(50));
}

TEST_CASE("kind names and flag serialization") {
  for (auto kind : {MatrixKind::fast_decay, MatrixKind::s_shaped, MatrixKind::bie,
                    MatrixKind::kahan, MatrixKind::gaussian})
    CHECK(parse_kind(kind_name(kind)) == kind);
  CHECK(kind_name(MatrixKind::s_shaped) == "s");
  CHECK_THROWS_AS(parse_kind("nope"), ArgumentError);

  MatrixSpec spec;
  spec.kind = MatrixKind::kahan;
  spec.n = 123;
  spec.beta = 0.1 + 0.2;
  spec.theta = 1.0 / 3.0;
  spec.seed = 18446744073709551615ull;
  CHECK(spec_from_flags(spec_to_flags(spec)) == spec);
  CHECK(spec_from_flags("--kind fast --n 400 --beta 1e-05 --seed 7").n == 400);
  CHECK_THROWS_AS(spec_from_flags("--bogus 3"), ArgumentError);
  CHECK_THROWS_AS(spec_from_flags("--n"), ArgumentError);
}
