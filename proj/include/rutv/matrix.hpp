#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace rutv {

using Index = std::size_t;

/// Unit roundoff bound for IEEE double, 2.22e-16.
inline constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

/// Dense real matrix stored column-major.
///
/// Submatrix access copies (`block` / `set_block`); there are no aliasing
/// views. A default-constructed matrix is 0x0, and zero-width blocks are
/// legal so that empty index ranges in blocked algorithms need no special
/// casing.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Index rows, Index cols);
  Matrix(Index rows, Index cols, std::vector<double> data);

  static Matrix identity(Index n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix diagonal(std::span<const double> d, Index rows, Index cols);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(Index i, Index j) { return data_[j * rows_ + i]; }
  double operator()(Index i, Index j) const { return data_[j * rows_ + i]; }

  double* col(Index j) { return data_.data() + j * rows_; }
  const double* col(Index j) const { return data_.data() + j * rows_; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  Matrix block(Index r0, Index c0, Index nr, Index nc) const;
  Matrix cols_range(Index c0, Index nc) const { return block(0, c0, rows_, nc); }
  void set_block(Index r0, Index c0, const Matrix& src);
  void set_zero_block(Index r0, Index c0, Index nr, Index nc);

  Matrix transposed() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  void check_block(Index r0, Index c0, Index nr, Index nc) const;

  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);

/// [A B] side by side; row counts must agree.
Matrix hcat(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);
double frobenius_norm_squared(const Matrix& a);

/// Largest singular value, through the dense Jacobi SVD.
double spectral_norm(const Matrix& a);

/// ||Q^T Q - I||_F.
double orthogonality_defect(const Matrix& q);

/// Text format: "m n" on the first line, then m lines of n values printed
/// with 17 significant digits. Reading back what was written is bitwise exact.
void write_matrix(std::ostream& os, const Matrix& a);
Matrix read_matrix(std::istream& is);
void save_matrix(const std::string& path, const Matrix& a);
Matrix load_matrix(const std::string& path);

}  // namespace rutv
