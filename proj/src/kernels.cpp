#include "rutv/kernels.hpp"

#include <atomic>
#include <string>
#include <vector>

#ifdef RUTV_HAVE_OPENMP
#include <omp.h>
#endif

#include "rutv/error.hpp"

namespace rutv {

namespace {

std::atomic<Execution> g_execution{Execution::serial};

struct GemmShape {
  Index m, n, k;
};

GemmShape check_shapes(const Matrix& a, const Matrix& b, Trans ta, Trans tb) {
  const Index am = ta == Trans::no ? a.rows() : a.cols();
  const Index ak = ta == Trans::no ? a.cols() : a.rows();
  const Index bk = tb == Trans::no ? b.rows() : b.cols();
  const Index bn = tb == Trans::no ? b.cols() : b.rows();
  if (ak != bk) {
    throw DimensionError("gemm: inner dimensions " + std::to_string(ak) + " and " +
                         std::to_string(bk) + " differ");
  }
  return {am, bn, ak};
}

// Output column j of alpha*op(A)*op(B). `scratch` holds op(B)(:,j) when B is
// transposed and A is not (k entries).
void gemm_column(double alpha, const Matrix& a, const Matrix& b, Trans ta, Trans tb,
                 const GemmShape& s, Index j, double* __restrict out, std::vector<double>& scratch) {
  const double* bj;
  if (tb == Trans::no) {
    bj = b.col(j);
  } else {
    scratch.resize(s.k);
    for (Index p = 0; p < s.k; ++p) scratch[p] = b(j, p);
    bj = scratch.data();
  }
  if (ta == Trans::no) {
    for (Index p = 0; p < s.k; ++p) {
      const double bpj = bj[p];
      if (bpj == 0.0) continue;
      const double* __restrict ap = a.col(p);
      for (Index i = 0; i < s.m; ++i) out[i] += ap[i] * bpj;
    }
    if (alpha != 1.0)
      for (Index i = 0; i < s.m; ++i) out[i] *= alpha;
  } else {
    for (Index i = 0; i < s.m; ++i) {
      const double* __restrict ai = a.col(i);
      double acc = 0.0;
      for (Index p = 0; p < s.k; ++p) acc += ai[p] * bj[p];
      out[i] = alpha * acc;
    }
  }
}

}  // namespace

void set_execution(Execution mode) { g_execution.store(mode); }
Execution execution() { return g_execution.load(); }

int parallel_threads() {
#ifdef RUTV_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Matrix gemm_serial(double alpha, const Matrix& a, const Matrix& b, Trans ta, Trans tb) {
  const GemmShape s = check_shapes(a, b, ta, tb);
  Matrix c(s.m, s.n);
  std::vector<double> scratch;
  for (Index j = 0; j < s.n; ++j) gemm_column(alpha, a, b, ta, tb, s, j, c.col(j), scratch);
  return c;
}

Matrix gemm_parallel(double alpha, const Matrix& a, const Matrix& b, Trans ta, Trans tb) {
  const GemmShape s = check_shapes(a, b, ta, tb);
  Matrix c(s.m, s.n);
#ifdef RUTV_HAVE_OPENMP
  const long long ncols = static_cast<long long>(s.n);
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (long long j = 0; j < ncols; ++j) {
      gemm_column(alpha, a, b, ta, tb, s, static_cast<Index>(j), c.col(static_cast<Index>(j)),
                  scratch);
    }
  }
#else
  std::vector<double> scratch;
  for (Index j = 0; j < s.n; ++j) gemm_column(alpha, a, b, ta, tb, s, j, c.col(j), scratch);
#endif
  return c;
}

Matrix gemm(double alpha, const Matrix& a, const Matrix& b, Trans ta, Trans tb) {
  if (execution() == Execution::parallel) return gemm_parallel(alpha, a, b, ta, tb);
  return gemm_serial(alpha, a, b, ta, tb);
}

}  // namespace rutv
