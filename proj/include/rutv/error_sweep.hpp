#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rutv/matrix.hpp"
#include "rutv/power_urv.hpp"
#include "rutv/qr.hpp"
#include "rutv/rand_utv.hpp"
#include "rutv/svd.hpp"

namespace rutv {

/// Rank-k truncation errors e_k = ||A - A_k|| for k = 1 .. n-1.
struct ErrorCurve {
  std::string algo;
  Norm norm = Norm::spectral;
  std::vector<Index> k_values;
  std::vector<double> e_k;
};

/// For A = U T V^T with orthogonal U, V: ||A - A_k|| = ||T(k:, k:)||, so
/// every curve below is read off the middle factor alone.
ErrorCurve error_sweep(const UtvFactorization& f, Norm norm, const std::string& algo = "randutv");
ErrorCurve error_sweep(const UrvFactorization& f, Norm norm, const std::string& algo = "powerurv");
ErrorCurve error_sweep(const PivotedQr& f, Norm norm, const std::string& algo = "cpqr");
/// Optimal curve from singular values.
ErrorCurve error_sweep(const SvdTriple& f, Norm norm, const std::string& algo = "svd");
ErrorCurve svd_error_curve(const std::vector<double>& sigma, Norm norm,
                           const std::string& algo = "svd");
/// Curve for any middle factor T (m x n).
ErrorCurve trailing_error_curve(const Matrix& t, Norm norm, const std::string& algo);

/// e_k / e_opt_k - 1 per k; nullopt where e_opt_k <= 1e-300.
std::vector<std::optional<double>> relative_metric(const ErrorCurve& curve,
                                                   const ErrorCurve& opt);

/// ||T(k:, k:)||_F for k = 0 .. n (last entry 0), accumulated from the
/// bottom-right corner outward.
std::vector<double> trailing_fro_norms(const Matrix& t);

/// ||T(k:, k:)||_2 for each k in `ks`, by Golub-Kahan-Lanczos with full
/// reorthogonalization on each trailing block. The serial loop is the
/// reference; the parallel one distributes values of k over OpenMP threads
/// and returns bitwise identical results.
std::vector<double> trailing_spectral_norms_serial(const Matrix& t, const std::vector<Index>& ks);
std::vector<double> trailing_spectral_norms_parallel(const Matrix& t,
                                                     const std::vector<Index>& ks);
std::vector<double> trailing_spectral_norms(const Matrix& t, const std::vector<Index>& ks);

/// Largest singular value of B by Lanczos bidiagonalization.
double lanczos_spectral_norm(const Matrix& b);

/// "k,e_k,e_opt,rel" header, one row per k; "NA" where rel is undefined.
void write_curve_csv(std::ostream& os, const ErrorCurve& curve, const ErrorCurve& opt);

std::string norm_name(Norm norm);
Norm parse_norm(const std::string& name);

}  // namespace rutv
