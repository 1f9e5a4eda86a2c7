#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rutv/matrix.hpp"
#include "rutv/random.hpp"

namespace rutv {

enum class MatrixKind { fast_decay, s_shaped, bie, kahan, gaussian };

/// Everything needed to regenerate a test matrix.
struct MatrixSpec {
  MatrixKind kind = MatrixKind::fast_decay;
  Index n = 400;
  double beta = 1e-5;   ///< fast_decay: smallest singular value
  double theta = 1.2;   ///< kahan: angle in radians
  std::uint64_t seed = 0;

  friend bool operator==(const MatrixSpec&, const MatrixSpec&) = default;
};

struct GeneratedMatrix {
  Matrix A;
  /// Known singular values, descending; empty when the construction does
  /// not fix them.
  std::vector<double> sigma_true;
};

/// A = U D V^T with d_i = beta^((i-1)/(n-1)); U, V from Householder QR of
/// Gaussian matrices (U drawn first).
GeneratedMatrix gen_fast_decay(Index n, double beta, RngStream& rng);

/// Same construction with d_i = 0.01 + 0.99 / (1 + exp(60 (i - n/4) / n)):
/// a plateau near 1, a sharp drop, a floor at 0.01.
GeneratedMatrix gen_s_shaped(Index n, RngStream& rng);

/// Single-layer Laplace potential on the unit circle, trapezoidal rule
/// with n nodes; the diagonal uses the exact integral of the log kernel
/// over a node's own panel. Deterministic and ill-conditioned.
Matrix gen_bie(Index n);

/// Upper-triangular Kahan matrix diag(1, s, ..., s^(n-1)) (I - c N), where N
/// is the strictly upper triangle of ones, s = sin(theta), c = cos(theta).
Matrix gen_kahan(Index n, double theta);

GeneratedMatrix generate(const MatrixSpec& spec);

std::string kind_name(MatrixKind kind);  ///< "fast", "s", "bie", "kahan", "gaussian"
MatrixKind parse_kind(const std::string& name);

/// "--kind fast --n 400 --beta 1e-05 --theta 1.2 --seed 7", doubles with 17
/// significant digits, and its inverse.
std::string spec_to_flags(const MatrixSpec& spec);
MatrixSpec spec_from_flags(const std::string& flags);

}  // namespace rutv
