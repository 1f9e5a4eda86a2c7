#pragma once

#include "rutv/matrix.hpp"

namespace rutv {

enum class Trans { no, yes };

/// Which implementation the dispatching kernels use. Serial is the default
/// and the reference; the parallel variants are checked against it.
enum class Execution { serial, parallel };

void set_execution(Execution mode);
Execution execution();

/// Number of threads the parallel variants will use (1 without OpenMP).
int parallel_threads();

/// RAII switch of the process-wide execution mode.
class ScopedExecution {
 public:
  explicit ScopedExecution(Execution mode) : saved_(execution()) { set_execution(mode); }
  ~ScopedExecution() { set_execution(saved_); }
  ScopedExecution(const ScopedExecution&) = delete;
  ScopedExecution& operator=(const ScopedExecution&) = delete;

 private:
  Execution saved_;
};

/// alpha * op(A) * op(B). Throws DimensionError when inner sizes differ.
Matrix gemm(double alpha, const Matrix& a, const Matrix& b, Trans ta = Trans::no,
            Trans tb = Trans::no);

/// Reference triple loop. Each output column is accumulated in a fixed order.
Matrix gemm_serial(double alpha, const Matrix& a, const Matrix& b, Trans ta, Trans tb);

/// Same arithmetic as gemm_serial, output columns split across OpenMP
/// threads. Results are bitwise identical to the serial path.
Matrix gemm_parallel(double alpha, const Matrix& a, const Matrix& b, Trans ta, Trans tb);

}  // namespace rutv
