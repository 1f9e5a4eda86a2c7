#include "rutv/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rutv/error.hpp"
#include "rutv/kernels.hpp"
#include "rutv/svd.hpp"

namespace rutv {

Matrix::Matrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(Index rows, Index cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("matrix data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::identity(Index n) {
  Matrix eye(n, n);
  for (Index i = 0; i < n; ++i) eye(i, i) = 1.0;
  return eye;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const Index m = rows.size();
  const Index n = m == 0 ? 0 : rows.begin()->size();
  Matrix a(m, n);
  Index i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw DimensionError("ragged row list");
    Index j = 0;
    for (double v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

Matrix Matrix::diagonal(std::span<const double> d, Index rows, Index cols) {
  Matrix a(rows, cols);
  const Index k = std::min({rows, cols, static_cast<Index>(d.size())});
  for (Index i = 0; i < k; ++i) a(i, i) = d[i];
  return a;
}

void Matrix::check_block(Index r0, Index c0, Index nr, Index nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw DimensionError("block (" + std::to_string(r0) + "," + std::to_string(c0) + ")+" +
                         std::to_string(nr) + "x" + std::to_string(nc) + " outside " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Matrix Matrix::block(Index r0, Index c0, Index nr, Index nc) const {
  check_block(r0, c0, nr, nc);
  Matrix out(nr, nc);
  for (Index j = 0; j < nc; ++j) {
    std::copy_n(col(c0 + j) + r0, nr, out.col(j));
  }
  return out;
}

void Matrix::set_block(Index r0, Index c0, const Matrix& src) {
  check_block(r0, c0, src.rows(), src.cols());
  for (Index j = 0; j < src.cols(); ++j) {
    std::copy_n(src.col(j), src.rows(), col(c0 + j) + r0);
  }
}

void Matrix::set_zero_block(Index r0, Index c0, Index nr, Index nc) {
  check_block(r0, c0, nr, nc);
  for (Index j = 0; j < nc; ++j) std::fill_n(col(c0 + j) + r0, nr, 0.0);
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (Index j = 0; j < cols_; ++j)
    for (Index i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("operator+: shape mismatch");
  for (Index k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("operator-: shape mismatch");
  for (Index k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hcat: row counts differ");
  Matrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

double frobenius_norm_squared(const Matrix& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return s;
}

double frobenius_norm(const Matrix& a) {
  // Scaled accumulation so tiny and huge entries neither underflow nor overflow.
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : a.values()) {
    if (v == 0.0) continue;
    const double av = std::abs(v);
    if (scale < av) {
      ssq = 1.0 + ssq * (scale / av) * (scale / av);
      scale = av;
    } else {
      ssq += (av / scale) * (av / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double spectral_norm(const Matrix& a) {
  if (a.empty()) return 0.0;
  return singular_values(a).front();
}

double orthogonality_defect(const Matrix& q) {
  Matrix g = gemm(1.0, q, q, Trans::yes, Trans::no);
  for (Index i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return frobenius_norm(g);
}

void write_matrix(std::ostream& os, const Matrix& a) {
  os << a.rows() << ' ' << a.cols() << '\n';
  char buf[32];
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      if (j) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

namespace {

double parse_double(const std::string& token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw std::runtime_error("bad matrix entry '" + token + "'");
  if (!std::isfinite(v)) throw std::runtime_error("non-finite matrix entry '" + token + "'");
  return v;
}

}  // namespace

Matrix read_matrix(std::istream& is) {
  long long m = -1, n = -1;
  if (!(is >> m >> n) || m < 0 || n < 0) throw std::runtime_error("bad matrix header");
  Matrix a(static_cast<Index>(m), static_cast<Index>(n));
  std::string token;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (!(is >> token)) throw std::runtime_error("matrix data truncated");
      a(i, j) = parse_double(token);
    }
  }
  return a;
}

void save_matrix(const std::string& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_matrix(out, a);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_matrix(in);
}

}  // namespace rutv
