#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rutv/matrix.hpp"
#include "rutv/random.hpp"

namespace rutv {

/// A = U T V^T from the blocked randomized UTV algorithms.
///
/// After `steps_done` iterations the leading columns of T processed so far
/// are upper trapezoidal and every b x b diagonal block in that region is
/// diagonal with non-negative, non-increasing entries.
struct UtvFactorization {
  Matrix U;  ///< m x m
  Matrix T;  ///< m x n
  Matrix V;  ///< n x n
  Index block_size = 0;
  Index steps_done = 0;
  Index oversample = 0;
  Index power = 0;
  /// Columns of T in final form (min(n, steps_done * b) unless the dense
  /// tail step ran, in which case n).
  Index processed_cols = 0;
  /// e_0 = ||A||_F followed by the tracked Frobenius error after each step.
  std::vector<double> error_history;
};

/// Running Frobenius norm of the unprocessed trailing block, updated by
/// subtracting the squared mass of each processed row panel.
class ErrorTracker {
 public:
  explicit ErrorTracker(double norm_a);

  /// Removes ||panel||_F^2. Throws NumericalConsistencyError when the
  /// running square drops below -1e-10 ||A||_F^2; smaller negatives clamp to 0.
  void update(const Matrix& panel);

  double error() const;
  double squared() const { return e_sq_; }
  double initial() const { return norm_a_; }
  const std::vector<double>& history() const { return history_; }

 private:
  double norm_a_;
  double e_sq_;
  std::vector<double> history_;
};

/// Functional form of ErrorTracker::update.
ErrorTracker error_update(ErrorTracker tracker, const Matrix& panel);

/// Extra sample directions carried from one boosted step to the next:
/// (n - i b) x p with orthonormal columns, expressed in the coordinates of
/// the next trailing block.
struct OversampleCarry {
  Matrix W_next;
};

struct StopRule {
  std::optional<double> tol_fro;
  std::optional<Index> max_rank;
};

/// Called after every completed step with the 1-based step number.
using StepObserver = std::function<void(Index step, const Matrix& T, const ErrorTracker& tracker)>;

struct RandUtvOptions {
  Index block_size = 128;
  int power = 2;
  Index oversample = 0;
  /// false: the basic algorithm (fresh b-column sketch per step, plain power
  /// loop, HQR of the sample). true: oversampling with sample recycling.
  bool boosted = true;
  StopRule stop;
  StepObserver observer;
};

/// General driver behind the named variants below. Requires m >= n >= 1,
/// block_size >= 1, power >= 0 (>= 1 when boosted).
UtvFactorization randutv(const Matrix& a, const RandUtvOptions& opts, RngStream& rng);

/// Basic blocked randUTV: per step a Gaussian sketch of the trailing block
/// with q unstabilized power rounds, right transform from HQR of the
/// sample, left transform from HQR of the new panel, b x b SVD polish.
UtvFactorization randutv_basic(const Matrix& a, Index b, int q, RngStream& rng);

/// randUTV with oversampling p and recycled extra samples. The first step
/// sketches b + p columns with q power rounds; later steps sketch b fresh
/// columns with q - 1 rounds and append the carried directions. The right
/// transform comes from the leading b left singular vectors of the sample.
UtvFactorization randutv_boosted(const Matrix& a, Index b, int q, Index p, RngStream& rng);

/// randutv_boosted that stops early once the tracked Frobenius error is at
/// most stop.tol_fro or at least stop.max_rank columns are processed.
UtvFactorization randutv_partial(const Matrix& a, Index b, int q, Index p, RngStream& rng,
                                 StopRule stop);

}  // namespace rutv
