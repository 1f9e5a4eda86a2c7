// Serial reference vs OpenMP variants of the two hot kernels: gemm and the
// per-k trailing spectral norm sweep. Also checks the results agree bitwise.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "rutv/error_sweep.hpp"
#include "rutv/kernels.hpp"
#include "rutv/matgen.hpp"
#include "rutv/random.hpp"

using namespace rutv;

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads %d\n", parallel_threads());
  std::printf("%-28s %10s %10s %8s %s\n", "kernel", "serial_s", "parallel_s", "speedup", "identical");
  bool all_same = true;

  RngStream rng(1);
  for (Index n : {128, 256, 512}) {
    const Matrix a = gaussian(n, n, rng), b = gaussian(n, n, rng);
    Matrix cs, cp;
    const double ts = best_of(reps, [&] { cs = gemm_serial(1.0, a, b, Trans::no, Trans::no); });
    const double tp = best_of(reps, [&] { cp = gemm_parallel(1.0, a, b, Trans::no, Trans::no); });
    const bool same = cs == cp;
    all_same = all_same && same;
    char label[64];
    std::snprintf(label, sizeof label, "gemm %zux%zux%zu", n, n, n);
    std::printf("%-28s %10.4f %10.4f %8.2f %s\n", label, ts, tp, ts / tp, same ? "yes" : "NO");
  }

  for (Index n : {200, 400}) {
    RngStream g(2);
    const Matrix t = gen_fast_decay(n, 1e-5, g).A;
    std::vector<Index> ks;
    for (Index k = 1; k < n; ++k) ks.push_back(k);
    std::vector<double> ss, sp;
    const double ts = best_of(1, [&] { ss = trailing_spectral_norms_serial(t, ks); });
    const double tp = best_of(1, [&] { sp = trailing_spectral_norms_parallel(t, ks); });
    const bool same = ss == sp;
    all_same = all_same && same;
    char label[64];
    std::snprintf(label, sizeof label, "trailing ||.||_2 sweep n=%zu", n);
    std::printf("%-28s %10.4f %10.4f %8.2f %s\n", label, ts, tp, ts / tp, same ? "yes" : "NO");
  }
  return all_same ? 0 : 1;
}
