#include "rutv/error_sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#ifdef RUTV_HAVE_OPENMP
#include <omp.h>
#endif

#include "rutv/error.hpp"
#include "rutv/kernels.hpp"
#include "rutv/random.hpp"

namespace rutv {

namespace {

constexpr double kRitzTol = 4.0 * kMachineEps;

double dot(const double* x, const double* y, Index len) {
  double s = 0.0;
  for (Index i = 0; i < len; ++i) s += x[i] * y[i];
  return s;
}

double norm2(const std::vector<double>& x) { return std::sqrt(dot(x.data(), x.data(), x.size())); }

// Two passes of classical Gram-Schmidt against the first `count` columns of basis.
void reorthogonalize(std::vector<double>& x, const Matrix& basis, Index count) {
  const Index len = x.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (Index c = 0; c < count; ++c) {
      const double s = dot(basis.col(c), x.data(), len);
      const double* bc = basis.col(c);
      for (Index i = 0; i < len; ++i) x[i] -= s * bc[i];
    }
  }
}

// Largest eigenvalue of the symmetric tridiagonal (d, e) by Sturm bisection.
double tridiagonal_max_eigenvalue(const std::vector<double>& d, const std::vector<double>& e) {
  const Index n = d.size();
  double hi = 0.0;
  for (Index i = 0; i < n; ++i) {
    double r = d[i];
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < n) r += std::abs(e[i]);
    hi = std::max(hi, r);
  }
  double lo = 0.0;
  auto count_below = [&](double x) {
    Index count = 0;
    double q = d[0] - x;
    if (q < 0.0) ++count;
    for (Index i = 1; i < n; ++i) {
      if (q == 0.0) q = kMachineEps * (std::abs(x) + hi);
      q = d[i] - x - e[i - 1] * e[i - 1] / q;
      if (q < 0.0) ++count;
    }
    return count;
  };
  for (int it = 0; it < 200 && hi - lo > 2.0 * kMachineEps * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) == n) hi = mid; else lo = mid;
  }
  return hi;
}

std::vector<double> deterministic_start(Index len) {
  RngStream rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(len));
  std::vector<double> v(len);
  for (double& x : v) x = rng.normal();
  const double nv = norm2(v);
  for (double& x : v) x /= nv;
  return v;
}

// Index of the last row of t holding a nonzero entry, plus one.
Index used_rows(const Matrix& t) {
  for (Index i = t.rows(); i-- > 0;) {
    for (Index j = 0; j < t.cols(); ++j)
      if (t(i, j) != 0.0) return i + 1;
  }
  return 0;
}

double trailing_spectral(const Matrix& t, Index rows, Index k) {
  if (k >= rows || k >= t.cols()) return 0.0;
  return lanczos_spectral_norm(t.block(k, k, rows - k, t.cols() - k));
}

ErrorCurve make_curve(const std::string& algo, Norm norm, Index n) {
  ErrorCurve c;
  c.algo = algo;
  c.norm = norm;
  for (Index k = 1; k < n; ++k) c.k_values.push_back(k);
  return c;
}

}  // namespace

double lanczos_spectral_norm(const Matrix& b) {
  const Index p = b.rows();
  const Index r = b.cols();
  if (p == 0 || r == 0) return 0.0;
  // the start vector must live in the smaller dimension, or min(p, r) steps
  // cannot reach the whole row space
  if (p < r) return lanczos_spectral_norm(b.transposed());
  const Index max_steps = std::min(p, r);
  Matrix vbasis(r, max_steps);
  Matrix ubasis(p, max_steps);
  std::vector<double> diag, off;  // tridiagonal B_j^T B_j
  std::vector<double> alphas, betas;

  std::vector<double> v = deterministic_start(r);
  std::vector<double> u(p), w(r);
  double theta = 0.0;
  int settled = 0;
  for (Index j = 0; j < max_steps; ++j) {
    std::copy(v.begin(), v.end(), vbasis.col(j));
    // u = B v, orthogonalized against the previous left vectors.
    std::fill(u.begin(), u.end(), 0.0);
    for (Index c = 0; c < r; ++c) {
      const double vc = v[c];
      if (vc == 0.0) continue;
      const double* bc = b.col(c);
      for (Index i = 0; i < p; ++i) u[i] += bc[i] * vc;
    }
    reorthogonalize(u, ubasis, j);
    const double alpha = norm2(u);
    if (alpha == 0.0) break;
    for (double& x : u) x /= alpha;
    std::copy(u.begin(), u.end(), ubasis.col(j));
    alphas.push_back(alpha);

    diag.assign(alphas.size(), 0.0);
    off.assign(alphas.size() > 0 ? alphas.size() - 1 : 0, 0.0);
    for (Index i = 0; i < alphas.size(); ++i) {
      diag[i] = alphas[i] * alphas[i] + (i > 0 ? betas[i - 1] * betas[i - 1] : 0.0);
      if (i + 1 < alphas.size()) off[i] = alphas[i] * betas[i];
    }
    const double next = std::sqrt(tridiagonal_max_eigenvalue(diag, off));
    settled = (j > 0 && std::abs(next - theta) <= kRitzTol * next) ? settled + 1 : 0;
    theta = std::max(theta, next);
    if (settled >= 2) break;

    // w = B^T u - alpha v
    for (Index c = 0; c < r; ++c) w[c] = dot(b.col(c), u.data(), p) - alpha * v[c];
    reorthogonalize(w, vbasis, j + 1);
    const double beta = norm2(w);
    if (beta <= kMachineEps * theta) break;
    betas.push_back(beta);
    for (Index c = 0; c < r; ++c) v[c] = w[c] / beta;
  }
  return theta;
}

std::vector<double> trailing_fro_norms(const Matrix& t) {
  const Index m = t.rows();
  const Index n = t.cols();
  std::vector<double> out(n + 1, 0.0);
  double acc = 0.0;
  for (Index k = n; k-- > 0;) {
    if (k < m) {
      for (Index j = n; j-- > k + 1;) acc += t(k, j) * t(k, j);
      for (Index i = m; i-- > k + 1;) acc += t(i, k) * t(i, k);
      acc += t(k, k) * t(k, k);
    }
    out[k] = std::sqrt(acc);
  }
  return out;
}

std::vector<double> trailing_spectral_norms_serial(const Matrix& t, const std::vector<Index>& ks) {
  const Index rows = used_rows(t);
  std::vector<double> out(ks.size());
  for (Index i = 0; i < ks.size(); ++i) out[i] = trailing_spectral(t, rows, ks[i]);
  return out;
}

std::vector<double> trailing_spectral_norms_parallel(const Matrix& t,
                                                     const std::vector<Index>& ks) {
  const Index rows = used_rows(t);
  std::vector<double> out(ks.size());
  const long long count = static_cast<long long>(ks.size());
#ifdef RUTV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (long long i = 0; i < count; ++i) {
    out[static_cast<Index>(i)] = trailing_spectral(t, rows, ks[static_cast<Index>(i)]);
  }
  return out;
}

std::vector<double> trailing_spectral_norms(const Matrix& t, const std::vector<Index>& ks) {
  if (execution() == Execution::parallel) return trailing_spectral_norms_parallel(t, ks);
  return trailing_spectral_norms_serial(t, ks);
}

ErrorCurve trailing_error_curve(const Matrix& t, Norm norm, const std::string& algo) {
  ErrorCurve c = make_curve(algo, norm, t.cols());
  if (norm == Norm::fro) {
    const std::vector<double> all = trailing_fro_norms(t);
    for (Index k : c.k_values) c.e_k.push_back(all[k]);
  } else {
    c.e_k = trailing_spectral_norms(t, c.k_values);
  }
  return c;
}

ErrorCurve svd_error_curve(const std::vector<double>& sigma, Norm norm, const std::string& algo) {
  ErrorCurve c = make_curve(algo, norm, sigma.size());
  for (Index k : c.k_values) c.e_k.push_back(eckart_young_error(sigma, k, norm));
  return c;
}

ErrorCurve error_sweep(const UtvFactorization& f, Norm norm, const std::string& algo) {
  return trailing_error_curve(f.T, norm, algo);
}

ErrorCurve error_sweep(const UrvFactorization& f, Norm norm, const std::string& algo) {
  return trailing_error_curve(f.R, norm, algo);
}

ErrorCurve error_sweep(const PivotedQr& f, Norm norm, const std::string& algo) {
  return trailing_error_curve(f.R, norm, algo);
}

ErrorCurve error_sweep(const SvdTriple& f, Norm norm, const std::string& algo) {
  return svd_error_curve(f.sigma, norm, algo);
}

std::vector<std::optional<double>> relative_metric(const ErrorCurve& curve,
                                                   const ErrorCurve& opt) {
  if (curve.k_values != opt.k_values) throw DimensionError("relative_metric: k grids differ");
  std::vector<std::optional<double>> out(curve.e_k.size());
  for (Index i = 0; i < out.size(); ++i) {
    if (opt.e_k[i] > 1e-300) out[i] = curve.e_k[i] / opt.e_k[i] - 1.0;
  }
  return out;
}

void write_curve_csv(std::ostream& os, const ErrorCurve& curve, const ErrorCurve& opt) {
  const auto rel = relative_metric(curve, opt);
  os << "k,e_k,e_opt,rel\n";
  char buf[96];
  for (Index i = 0; i < curve.k_values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,", curve.k_values[i], curve.e_k[i],
                  opt.e_k[i]);
    os << buf;
    if (rel[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", *rel[i]);
      os << buf << '\n';
    } else {
      os << "NA\n";
    }
  }
}

std::string norm_name(Norm norm) { return norm == Norm::spectral ? "spectral" : "fro"; }

Norm parse_norm(const std::string& name) {
  if (name == "spectral") return Norm::spectral;
  if (name == "fro") return Norm::fro;
  throw ArgumentError("unknown norm '" + name + "'");
}

}  // namespace rutv
