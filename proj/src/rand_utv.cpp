#include "rutv/rand_utv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rutv/error.hpp"
#include "rutv/kernels.hpp"
#include "rutv/qr.hpp"
#include "rutv/svd.hpp"

namespace rutv {

ErrorTracker::ErrorTracker(double norm_a)
    : norm_a_(norm_a), e_sq_(norm_a * norm_a), history_{norm_a} {}

void ErrorTracker::update(const Matrix& panel) {
  e_sq_ -= frobenius_norm_squared(panel);
  if (e_sq_ < 0.0) {
    if (e_sq_ < -1e-10 * norm_a_ * norm_a_) {
      throw NumericalConsistencyError("tracked squared error went negative: " +
                                      std::to_string(e_sq_));
    }
    e_sq_ = 0.0;
  }
  history_.push_back(error());
}

double ErrorTracker::error() const { return std::sqrt(e_sq_); }

ErrorTracker error_update(ErrorTracker tracker, const Matrix& panel) {
  tracker.update(panel);
  return tracker;
}

namespace {

// Column block [c0, c0 + nc) of M replaced by that block times Q (or Q^T).
void right_multiply_cols(Matrix& m, Index c0, const QFactor& q, Trans trans) {
  const Index nc = q.dim();
  m.set_block(0, c0, apply_q(q, m.block(0, c0, m.rows(), nc), Side::right, trans));
}

void right_multiply_cols(Matrix& m, Index c0, const Matrix& small) {
  m.set_block(0, c0, gemm(1.0, m.block(0, c0, m.rows(), small.rows()), small));
}

struct Workspace {
  Matrix U, T, V;
};

// Sketch of the row space of `tt` for the basic variant; returns the right
// transform of this step.
QFactor basic_right_transform(const Matrix& tt, Index b, int q, RngStream& rng) {
  const Matrix g = gaussian(tt.rows(), b, rng);
  Matrix y = gemm(1.0, tt, g, Trans::yes);
  for (int j = 0; j < q; ++j) y = gemm(1.0, tt, gemm(1.0, tt, y), Trans::yes);
  return hqr_full(y).q;
}

// Boosted sample Y (n' x (b + p)) for the current trailing block.
Matrix boosted_sample(const Matrix& tt, Index b, int q, Index p, bool first,
                      const OversampleCarry& carry, RngStream& rng) {
  if (first) {
    const Matrix g = gaussian(tt.rows(), b + p, rng);
    Matrix y = gemm(1.0, tt, g, Trans::yes);
    for (int j = 0; j < q; ++j) y = gemm(1.0, tt, gemm(1.0, tt, y), Trans::yes);
    return y;
  }
  const Matrix g = gaussian(tt.rows(), b, rng);
  Matrix yb = gemm(1.0, tt, g, Trans::yes);
  for (int j = 0; j + 1 < q; ++j) yb = gemm(1.0, tt, gemm(1.0, tt, yb), Trans::yes);
  Matrix x = gemm(1.0, tt, yb);

  // The carried directions live in the column space of the trailing block;
  // their images under T span the matching left directions.
  Matrix left;
  if (carry.W_next.cols() > 0) left = orthonormal_columns(gemm(1.0, tt, carry.W_next));
  if (left.cols() > 0) x -= gemm(1.0, left, gemm(1.0, left, x, Trans::yes));
  const Matrix qb = leading_columns(hqr_full(x).q, b);
  const Matrix probe = left.cols() > 0 ? hcat(qb, left) : qb;
  return gemm(1.0, tt, probe, Trans::yes);
}

}  // namespace

UtvFactorization randutv(const Matrix& a, const RandUtvOptions& opts, RngStream& rng) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index b = opts.block_size;
  const int q = opts.power;
  const Index p = opts.boosted ? opts.oversample : 0;
  if (n == 0 || m < n) {
    throw DimensionError("randutv needs m >= n >= 1 (factor the transpose), got " +
                         std::to_string(m) + "x" + std::to_string(n));
  }
  if (b == 0) throw ArgumentError("randutv: block size must be positive");
  if (q < 0) throw ArgumentError("randutv: power must be non-negative");
  if (opts.boosted && q < 1) throw ArgumentError("randutv_boosted: power must be at least 1");

  UtvFactorization out;
  out.block_size = b;
  out.oversample = p;
  out.power = static_cast<Index>(q);
  out.U = Matrix::identity(m);
  out.T = a;
  out.V = Matrix::identity(n);
  Matrix& U = out.U;
  Matrix& T = out.T;
  Matrix& V = out.V;

  ErrorTracker tracker(frobenius_norm(a));
  auto finish = [&]() {
    out.error_history = tracker.history();
    return std::move(out);
  };
  if (opts.stop.tol_fro && tracker.error() <= *opts.stop.tol_fro) return finish();

  OversampleCarry carry;
  const Index steps = (n + b - 1) / b;
  for (Index i = 0; i < steps; ++i) {
    const Index r0 = i * b;
    const Index mt = m - r0;
    const Index nt = n - r0;
    const Matrix tt = T.block(r0, r0, mt, nt);

    const bool randomized =
        r0 + b < m && r0 + b < n && (!opts.boosted || (nt > b + p && mt >= b + p));
    if (randomized) {
      QFactor vq;
      if (opts.boosted) {
        const Matrix y = boosted_sample(tt, b, q, p, i == 0, carry, rng);
        const Matrix wy = svd_tall_thin_left_leading(y, b + p);
        vq = hqr_full(wy.cols_range(0, b)).q;
        const Matrix rotated = apply_q(vq, wy.cols_range(b, p), Side::left, Trans::yes);
        carry.W_next = rotated.block(b, 0, nt - b, p);
      } else {
        vq = basic_right_transform(tt, b, q, rng);
      }
      right_multiply_cols(T, r0, vq, Trans::no);
      right_multiply_cols(V, r0, vq, Trans::no);

      QrResult left = hqr_full(T.block(r0, r0, mt, b));
      right_multiply_cols(U, r0, left.q, Trans::no);
      T.set_block(r0, r0 + b,
                  apply_q(left.q, T.block(r0, r0 + b, mt, nt - b), Side::left, Trans::yes));
      T.set_zero_block(r0 + b, r0, mt - b, b);

      const SvdTriple small = svd_dense(left.R.block(0, 0, b, b), SvdMode::full);
      right_multiply_cols(U, r0, small.U);
      right_multiply_cols(V, r0, small.V);
      T.set_block(r0, r0, Matrix::diagonal(small.sigma, b, b));
      T.set_block(r0, r0 + b, gemm(1.0, small.U, T.block(r0, r0 + b, b, nt - b), Trans::yes));
      if (r0 > 0) T.set_block(0, r0, gemm(1.0, T.block(0, r0, r0, b), small.V));

      tracker.update(T.block(r0, r0, b, nt));
      out.steps_done = i + 1;
      out.processed_cols = r0 + b;
    } else {
      const SvdTriple s = svd_dense(tt, SvdMode::full);
      right_multiply_cols(U, r0, s.U);
      right_multiply_cols(V, r0, s.V);
      const Matrix tail = T.block(r0, r0, mt, nt);
      T.set_block(r0, r0, Matrix::diagonal(s.sigma, mt, nt));
      if (r0 > 0) T.set_block(0, r0, gemm(1.0, T.block(0, r0, r0, nt), s.V));

      tracker.update(tail);
      out.steps_done = i + 1;
      out.processed_cols = n;
    }

    if (opts.observer) opts.observer(out.steps_done, T, tracker);
    if (out.processed_cols >= n) break;
    if (opts.stop.tol_fro && tracker.error() <= *opts.stop.tol_fro) break;
    if (opts.stop.max_rank && out.processed_cols >= *opts.stop.max_rank) break;
  }
  return finish();
}

UtvFactorization randutv_basic(const Matrix& a, Index b, int q, RngStream& rng) {
  RandUtvOptions opts;
  opts.block_size = b;
  opts.power = q;
  opts.boosted = false;
  return randutv(a, opts, rng);
}

UtvFactorization randutv_boosted(const Matrix& a, Index b, int q, Index p, RngStream& rng) {
  RandUtvOptions opts;
  opts.block_size = b;
  opts.power = q;
  opts.oversample = p;
  opts.boosted = true;
  return randutv(a, opts, rng);
}

UtvFactorization randutv_partial(const Matrix& a, Index b, int q, Index p, RngStream& rng,
                                 StopRule stop) {
  RandUtvOptions opts;
  opts.block_size = b;
  opts.power = q;
  opts.oversample = p;
  opts.boosted = true;
  opts.stop = stop;
  return randutv(a, opts, rng);
}

}  // namespace rutv
