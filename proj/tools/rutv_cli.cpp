// rutv: generate test matrices, factor them, sweep rank-k errors, time runs.
//
// Exit codes: 0 ok, 1 usage or input error, 2 numerical-consistency failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rutv/error.hpp"
#include "rutv/error_sweep.hpp"
#include "rutv/kernels.hpp"
#include "rutv/matgen.hpp"
#include "rutv/power_urv.hpp"
#include "rutv/qr.hpp"
#include "rutv/rand_utv.hpp"
#include "rutv/rsvd.hpp"
#include "rutv/svd.hpp"

using namespace rutv;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumerical = 2;

const std::vector<std::string> kAlgos = {"svd", "cpqr", "rurv", "powerurv", "randutv", "randutv-os"};

struct FactorParams {
  std::string algo;
  Index b = 50;
  std::optional<Index> p;
  int q = 2;
  std::uint64_t seed = 0;
  std::optional<double> tol_fro;
  std::optional<Index> max_rank;
};

struct Factors {
  Matrix U, T, V;
  Index steps = 0;
  Index processed = 0;
};

Factors run_factor(const Matrix& a, const FactorParams& fp) {
  RngStream rng(fp.seed);
  const Index n = a.cols();
  Factors out;
  if (fp.algo == "svd") {
    SvdTriple s = svd_dense(a);
    out.T = Matrix::diagonal(s.sigma, a.rows(), n);
    out.U = std::move(s.U);
    out.V = std::move(s.V);
    out.processed = n;
  } else if (fp.algo == "cpqr") {
    PivotedQr f = hqrcp(a);
    // A P = Q R with P(:, j) = e_perm[j], so A = Q R P^T
    Matrix p(n, n);
    for (Index j = 0; j < n; ++j) p(f.perm[j], j) = 1.0;
    out.U = materialize(f.q);
    out.T = std::move(f.R);
    out.V = std::move(p);
    out.processed = std::min(a.rows(), n);
  } else if (fp.algo == "rurv" || fp.algo == "powerurv") {
    const UrvFactorization f = power_urv(a, fp.algo == "rurv" ? 0 : fp.q, rng);
    out.U = f.U_matrix();
    out.T = f.R;
    out.V = f.V_matrix();
    out.processed = n;
  } else {
    RandUtvOptions o;
    o.block_size = fp.b;
    o.power = fp.q;
    o.boosted = fp.algo == "randutv-os";
    o.oversample = o.boosted ? fp.p.value_or(fp.b) : 0;
    o.stop.tol_fro = fp.tol_fro;
    o.stop.max_rank = fp.max_rank;
    UtvFactorization f = randutv(a, o, rng);
    out.U = std::move(f.U);
    out.T = std::move(f.T);
    out.V = std::move(f.V);
    out.steps = f.steps_done;
    out.processed = f.processed_cols;
  }
  return out;
}

std::map<std::string, std::string> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string key, value;
  while (in >> key >> value) kv[key] = value;
  return kv;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int cmd_gen(const MatrixSpec& spec, const std::string& out) {
  const GeneratedMatrix g = generate(spec);
  save_matrix(out, g.A);
  std::printf("%s %zux%zu -> %s\n", kind_name(spec.kind).c_str(), g.A.rows(), g.A.cols(),
              out.c_str());
  return kOk;
}

int cmd_factor(const FactorParams& fp, const std::string& in, const std::string& prefix) {
  const Matrix a = load_matrix(in);
  const Factors f = run_factor(a, fp);
  const double rel = frobenius_norm(a - gemm(1.0, gemm(1.0, f.U, f.T), f.V, Trans::no, Trans::yes)) /
                     std::max(frobenius_norm(a), 1e-300);
  save_matrix(prefix + ".U.mtx", f.U);
  save_matrix(prefix + ".T.mtx", f.T);
  save_matrix(prefix + ".V.mtx", f.V);
  std::ofstream man(prefix + ".manifest");
  man << "algo " << fp.algo << "\nm " << a.rows() << "\nn " << a.cols() << "\nb " << fp.b
      << "\np " << (fp.algo == "randutv-os" ? fp.p.value_or(fp.b) : 0) << "\nq " << fp.q
      << "\nseed " << fp.seed << "\nsteps " << f.steps << "\nprocessed " << f.processed << '\n';
  if (!man) throw std::runtime_error("cannot write manifest for '" + prefix + "'");
  std::printf("algo %s processed %zu reconstruction %.3e\n", fp.algo.c_str(), f.processed, rel);
  if (!(rel <= 1e-10)) {
    std::fprintf(stderr, "reconstruction error %.3e exceeds 1e-10\n", rel);
    return kNumerical;
  }
  return kOk;
}

int cmd_errors(const std::string& in, const std::string& prefix, Norm norm,
               const std::string& csv) {
  const Matrix a = load_matrix(in);
  const auto manifest = read_manifest(prefix + ".manifest");
  const Matrix t = load_matrix(prefix + ".T.mtx");
  if (t.rows() != a.rows() || t.cols() != a.cols()) {
    throw DimensionError("factor T is " + std::to_string(t.rows()) + "x" +
                         std::to_string(t.cols()) + " but A is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  const std::string algo = manifest.count("algo") ? manifest.at("algo") : "unknown";
  const ErrorCurve curve = trailing_error_curve(t, norm, algo);
  const ErrorCurve opt = svd_error_curve(singular_values(a), norm);

  if (csv.empty()) {
    write_curve_csv(std::cout, curve, opt);
  } else {
    std::ofstream os(csv);
    if (!os) throw std::runtime_error("cannot open '" + csv + "' for writing");
    write_curve_csv(os, curve, opt);
  }
  for (Index i = 0; i < curve.e_k.size(); ++i) {
    if (curve.e_k[i] < opt.e_k[i] - 1e-9) {
      std::fprintf(stderr, "e_k below the optimal error at k=%zu: %.17g < %.17g\n",
                   curve.k_values[i], curve.e_k[i], opt.e_k[i]);
      return kNumerical;
    }
  }
  return kOk;
}

int cmd_check_rsvd(Index n, Index ell, int q, std::uint64_t seed) {
  const Index cols = std::max<Index>(1, 2 * n / 3);
  RngStream rng(seed);
  const Matrix a = gaussian(n, cols, rng);
  const Matrix start = gaussian(cols, cols, rng);
  if (ell == 0 || ell > cols) throw ArgumentError("--ell must be in [1, " + std::to_string(cols) + "]");
  const Matrix u = power_urv_from_start(a, q, start).U_matrix().cols_range(0, ell);
  const RsvdFactors r = rsvd(a, start, ell, q);
  const double gap = projector_gap(u, r.U, a);
  std::printf("n %zu cols %zu ell %zu q %d projector_gap %.3e\n", n, cols, ell, q, gap);
  return gap <= 1e-10 ? kOk : kNumerical;
}

int cmd_time(const MatrixSpec& spec, const std::vector<std::string>& algos, const FactorParams& base,
             int reps, const std::string& csv) {
  const Matrix a = generate(spec).A;
  std::ostringstream rows;
  rows << "kind,n,algo,b,p,q,seed,reps,wall_time_seconds,timestamp\n";
  for (const auto& algo : algos) {
    FactorParams fp = base;
    fp.algo = algo;
    run_factor(a, fp);  // warmup
    std::vector<double> times;
    for (int r = 0; r < reps; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      run_factor(a, fp);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    const double med = median(times);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%zu,%s,%zu,%zu,%d,%llu,%d,%.6f,%s\n",
                  kind_name(spec.kind).c_str(), spec.n, algo.c_str(), fp.b,
                  algo == "randutv-os" ? fp.p.value_or(fp.b) : Index{0}, fp.q,
                  static_cast<unsigned long long>(fp.seed), reps, med, utc_timestamp().c_str());
    rows << buf;
    std::printf("%-10s n=%zu median %.4f s over %d reps\n", algo.c_str(), spec.n, med, reps);
  }
  if (csv.empty()) {
    std::cout << rows.str();
  } else {
    std::ofstream os(csv);
    if (!os) throw std::runtime_error("cannot open '" + csv + "' for writing");
    os << rows.str();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized rank-revealing UTV factorization toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool parallel = false;
  app.add_flag("--parallel", parallel, "Use the OpenMP kernels (results are identical)");

  const std::map<std::string, MatrixKind> kinds = {{"fast", MatrixKind::fast_decay},
                                                   {"s", MatrixKind::s_shaped},
                                                   {"bie", MatrixKind::bie},
                                                   {"kahan", MatrixKind::kahan},
                                                   {"gaussian", MatrixKind::gaussian}};
  const std::map<std::string, Norm> norms = {{"spectral", Norm::spectral}, {"fro", Norm::fro}};

  MatrixSpec spec;
  std::string out;
  auto* gen = app.add_subcommand("gen", "Generate a test matrix");
  gen->add_option("--kind", spec.kind, "Matrix family")
      ->required()
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
  gen->add_option("--n", spec.n, "Size")->required()->check(CLI::Range(Index{1}, Index{100000}));
  gen->add_option("--beta", spec.beta, "Smallest singular value (fast)");
  gen->add_option("--theta", spec.theta, "Angle in radians (kahan)");
  gen->add_option("--seed", spec.seed, "Random seed");
  gen->add_option("--out", out, "Output matrix file")->required();

  FactorParams fp;
  std::string in, prefix;
  Index p_value = 0;
  double tol_value = 0.0;
  Index max_rank_value = 0;
  auto* factor = app.add_subcommand("factor", "Factor a matrix and write U, T, V");
  factor->add_option("--algo", fp.algo, "Algorithm")->required()->check(CLI::IsMember(kAlgos));
  factor->add_option("--q", fp.q, "Power iterations")->check(CLI::NonNegativeNumber);
  factor->add_option("--b", fp.b, "Block size")->check(CLI::PositiveNumber);
  auto* p_opt = factor->add_option("--p", p_value, "Oversampling (randutv-os, default b)");
  factor->add_option("--seed", fp.seed, "Random seed");
  factor->add_option("--in", in, "Input matrix file")->required();
  factor->add_option("--out-prefix", prefix, "Prefix for factor files")->required();
  auto* tol_opt = factor->add_option("--tol-fro", tol_value, "Stop once the Frobenius error is below")
                      ->check(CLI::NonNegativeNumber);
  auto* rank_opt = factor->add_option("--max-rank", max_rank_value, "Stop after this many columns")
                       ->check(CLI::PositiveNumber);

  Norm norm = Norm::spectral;
  std::string csv;
  auto* errors = app.add_subcommand("errors", "Rank-k error curve of a factorization");
  errors->add_option("--in", in, "Original matrix file")->required();
  errors->add_option("--factors", prefix, "Prefix given to factor")->required();
  errors->add_option("--norm", norm, "spectral or fro")
      ->transform(CLI::CheckedTransformer(norms, CLI::ignore_case));
  errors->add_option("--csv", csv, "Output CSV (default: standard output)");

  Index rs_n = 60, rs_ell = 10;
  int rs_q = 1;
  std::uint64_t rs_seed = 0;
  auto* check = app.add_subcommand("check-rsvd", "Compare shared-sketch powerURV and RSVD");
  check->add_option("--n", rs_n, "Rows (columns are 2n/3)")->check(CLI::Range(Index{2}, Index{5000}));
  check->add_option("--ell", rs_ell, "Rank")->check(CLI::PositiveNumber);
  check->add_option("--q", rs_q, "Power iterations")->check(CLI::NonNegativeNumber);
  check->add_option("--seed", rs_seed, "Random seed");

  std::vector<std::string> time_algos;
  int reps = 3;
  MatrixSpec tspec;
  FactorParams tfp;
  Index tp_value = 0;
  auto* timing = app.add_subcommand("time", "Median wall time of factorizations");
  timing->add_option("--algo", time_algos, "Algorithms")->required()->check(CLI::IsMember(kAlgos));
  timing->add_option("--reps", reps, "Timed repetitions after one warmup")->check(CLI::PositiveNumber);
  timing->add_option("--csv", csv, "Output CSV (default: standard output)");
  timing->add_option("--kind", tspec.kind, "Matrix family")
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
  timing->add_option("--n", tspec.n, "Size")->check(CLI::Range(Index{1}, Index{100000}));
  timing->add_option("--seed", tspec.seed, "Matrix seed");
  timing->add_option("--q", tfp.q, "Power iterations")->check(CLI::NonNegativeNumber);
  timing->add_option("--b", tfp.b, "Block size")->check(CLI::PositiveNumber);
  auto* tp_opt = timing->add_option("--p", tp_value, "Oversampling (randutv-os, default b)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  set_execution(parallel ? Execution::parallel : Execution::serial);
  try {
    if (*gen) return cmd_gen(spec, out);
    if (*factor) {
      if (*p_opt) fp.p = p_value;
      if (*tol_opt) fp.tol_fro = tol_value;
      if (*rank_opt) fp.max_rank = max_rank_value;
      return cmd_factor(fp, in, prefix);
    }
    if (*errors) return cmd_errors(in, prefix, norm, csv);
    if (*check) return cmd_check_rsvd(rs_n, rs_ell, rs_q, rs_seed);
    if (*timing) {
      tfp.seed = tspec.seed;
      if (*tp_opt) tfp.p = tp_value;
      return cmd_time(tspec, time_algos, tfp, reps, csv);
    }
  } catch (const NumericalConsistencyError& e) {
    std::fprintf(stderr, "numerical consistency failure: %s\n", e.what());
    return kNumerical;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "numerical consistency failure: %s\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
