#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace stpjsr {

/// Default upper limit on the number of entries a Kronecker or semi-tensor
/// product may allocate.
inline constexpr std::size_t kDefaultElementCap = 100'000'000;

/// Dense real matrix, row-major. Entries are finite on construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix column(std::span<const double> values);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
  [[nodiscard]] std::span<double> data() noexcept { return data_; }

  [[nodiscard]] Matrix transpose() const;
  /// Copy of the `rows x cols` submatrix whose top-left corner is (r0, c0).
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  [[nodiscard]] bool is_zero() const noexcept;
  [[nodiscard]] double max_abs() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Writes `a * b` into `out`, resizing it if needed. `out` must not alias.
void multiply_into(const Matrix& a, const Matrix& b, Matrix& out);

/// Largest entrywise absolute difference; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Block (i, j) of the result is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b, std::size_t element_cap = kDefaultElementCap);

/// Semi-tensor product (a ⊗ I_{s/cols(a)})(b ⊗ I_{s/rows(b)}), s = lcm(cols(a), rows(b)).
Matrix stp(const Matrix& a, const Matrix& b, std::size_t element_cap = kDefaultElementCap);

}  // namespace stpjsr
