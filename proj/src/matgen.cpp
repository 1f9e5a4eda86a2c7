#include "rutv/matgen.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rutv/error.hpp"
#include "rutv/kernels.hpp"
#include "rutv/qr.hpp"

namespace rutv {

namespace {

Matrix random_orthogonal(Index n, RngStream& rng) {
  return materialize(hqr_full(gaussian(n, n, rng)).q);
}

GeneratedMatrix with_spectrum(std::vector<double> d, RngStream& rng) {
  const Index n = d.size();
  Matrix u = random_orthogonal(n, rng);
  const Matrix v = random_orthogonal(n, rng);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) u(i, j) *= d[j];
  return {gemm(1.0, u, v, Trans::no, Trans::yes), std::move(d)};
}

}  // namespace

GeneratedMatrix gen_fast_decay(Index n, double beta, RngStream& rng) {
  if (n < 2) throw ArgumentError("gen_fast_decay: n must be at least 2");
  if (!(beta > 0.0 && beta < 1.0)) throw ArgumentError("gen_fast_decay: beta must be in (0, 1)");
  std::vector<double> d(n);
  for (Index i = 0; i < n; ++i) {
    d[i] = std::pow(beta, static_cast<double>(i) / static_cast<double>(n - 1));
  }
  d.front() = 1.0;
  d.back() = beta;
  return with_spectrum(std::move(d), rng);
}

GeneratedMatrix gen_s_shaped(Index n, RngStream& rng) {
  if (n < 8) throw ArgumentError("gen_s_shaped: n must be at least 8");
  constexpr double floor_value = 1e-2;
  constexpr double steepness = 60.0;
  std::vector<double> d(n);
  const double nd = static_cast<double>(n);
  for (Index i = 0; i < n; ++i) {
    const double idx = static_cast<double>(i + 1);
    d[i] = floor_value + (1.0 - floor_value) / (1.0 + std::exp(steepness * (idx - nd / 4.0) / nd));
    if (i > 0) d[i] = std::min(d[i], d[i - 1]);
  }
  return with_spectrum(std::move(d), rng);
}

Matrix gen_bie(Index n) {
  if (n < 16) throw ArgumentError("gen_bie: n must be at least 16");
  const double two_pi = 2.0 * std::numbers::pi;
  const double w = two_pi / static_cast<double>(n);
  const double coef = -w / two_pi;
  Matrix a(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j) {
        // Integral of log|s| over the panel [-w/2, w/2] is w (log(w/2) - 1).
        a(i, j) = coef * (std::log(w / 2.0) - 1.0);
      } else {
        // |x_i - x_j| = 2 sin(|t_i - t_j| / 2) on the unit circle.
        const double dt = w * std::abs(static_cast<double>(i) - static_cast<double>(j));
        a(i, j) = coef * std::log(2.0 * std::sin(dt / 2.0));
      }
    }
  }
  return a;
}

Matrix gen_kahan(Index n, double theta) {
  if (n == 0) throw ArgumentError("gen_kahan: n must be positive");
  if (!(theta > 0.0 && theta < std::numbers::pi / 2.0)) {
    throw ArgumentError("gen_kahan: theta must be in (0, pi/2)");
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Matrix a(n, n);
  double scale = 1.0;
  for (Index i = 0; i < n; ++i) {
    a(i, i) = scale;
    for (Index j = i + 1; j < n; ++j) a(i, j) = -c * scale;
    scale *= s;
  }
  return a;
}

GeneratedMatrix generate(const MatrixSpec& spec) {
  RngStream rng(spec.seed);
  switch (spec.kind) {
    case MatrixKind::fast_decay:
      return gen_fast_decay(spec.n, spec.beta, rng);
    case MatrixKind::s_shaped:
      return gen_s_shaped(spec.n, rng);
    case MatrixKind::bie:
      return {gen_bie(spec.n), {}};
    case MatrixKind::kahan:
      return {gen_kahan(spec.n, spec.theta), {}};
    case MatrixKind::gaussian:
      return {gaussian(spec.n, spec.n, rng), {}};
  }
  throw ArgumentError("unknown matrix kind");
}

std::string kind_name(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::fast_decay: return "fast";
    case MatrixKind::s_shaped: return "s";
    case MatrixKind::bie: return "bie";
    case MatrixKind::kahan: return "kahan";
    case MatrixKind::gaussian: return "gaussian";
  }
  return "?";
}

MatrixKind parse_kind(const std::string& name) {
  for (MatrixKind k : {MatrixKind::fast_decay, MatrixKind::s_shaped, MatrixKind::bie,
                       MatrixKind::kahan, MatrixKind::gaussian}) {
    if (kind_name(k) == name) return k;
  }
  throw ArgumentError("unknown matrix kind '" + name + "'");
}

std::string spec_to_flags(const MatrixSpec& spec) {
  char beta[32], theta[32];
  std::snprintf(beta, sizeof beta, "%.17g", spec.beta);
  std::snprintf(theta, sizeof theta, "%.17g", spec.theta);
  std::ostringstream os;
  os << "--kind " << kind_name(spec.kind) << " --n " << spec.n << " --beta " << beta
     << " --theta " << theta << " --seed " << spec.seed;
  return os.str();
}

MatrixSpec spec_from_flags(const std::string& flags) {
  MatrixSpec spec;
  std::istringstream is(flags);
  std::string key, value;
  while (is >> key) {
    if (!(is >> value)) throw ArgumentError("flag '" + key + "' has no value");
    if (key == "--kind") spec.kind = parse_kind(value);
    else if (key == "--n") spec.n = std::stoull(value);
    else if (key == "--beta") spec.beta = std::stod(value);
    else if (key == "--theta") spec.theta = std::stod(value);
    else if (key == "--seed") spec.seed = std::stoull(value);
    else throw ArgumentError("unknown flag '" + key + "'");
  }
  return spec;
}

}  // namespace rutv
