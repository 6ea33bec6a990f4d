#include "stpjsr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stpjsr/error.hpp"

namespace stpjsr {

namespace {

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "matrix entries must be finite");
  }
}

void check_cap(std::size_t rows, std::size_t cols, std::size_t cap) {
  if (rows != 0 && cols > cap / rows) {
    throw Error(ErrorCode::kCapExceeded, "product of size " + std::to_string(rows) + "x" +
                                             std::to_string(cols) + " exceeds the element cap of " +
                                             std::to_string(cap));
  }
}

// a ⊗ I_p without materializing the identity.
Matrix kron_identity(const Matrix& a, std::size_t p, std::size_t cap) {
  if (p == 1) return a;
  check_cap(a.rows() * p, a.cols() * p, cap);
  Matrix out(a.rows() * p, a.cols() * p);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double v = a(i, j);
      if (v == 0.0) continue;
      for (std::size_t d = 0; d < p; ++d) out(i * p + d, j * p + d) = v;
    }
  }
  return out;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kDimension, "entry count " + std::to_string(data_.size()) + " does not match " +
                                           std::to_string(rows) + "x" + std::to_string(cols));
  }
  check_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::kDimension, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  check_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

Matrix Matrix::column(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw Error(ErrorCode::kOutOfRange, "block out of range");
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::kDimension, "shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::kDimension, "shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

void multiply_into(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimension, "cannot multiply " + std::to_string(a.rows()) + "x" +
                                           std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                                           "x" + std::to_string(b.cols()));
  }
  if (out.rows() != a.rows() || out.cols() != b.cols()) out = Matrix(a.rows(), b.cols());
  const std::size_t n = a.rows();
  const std::size_t inner = a.cols();
  const std::size_t m = b.cols();
  auto o = out.data();
  auto ad = a.data();
  auto bd = b.data();
  std::fill(o.begin(), o.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = ad[i * inner + k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) o[i * m + j] += aik * bd[k * m + j];
    }
  }
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  multiply_into(a, b, out);
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::kDimension, "shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b, std::size_t element_cap) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  check_cap(rows, cols, element_cap);
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double v = a(i, j);
      if (v == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) out(i * b.rows() + p, j * b.cols() + q) = v * b(p, q);
    }
  }
  return out;
}

Matrix stp(const Matrix& a, const Matrix& b, std::size_t element_cap) {
  const std::size_t s = std::lcm(a.cols(), b.rows());
  const Matrix left = kron_identity(a, s / a.cols(), element_cap);
  const Matrix right = kron_identity(b, s / b.rows(), element_cap);
  check_cap(left.rows(), right.cols(), element_cap);
  return left * right;
}

}  // namespace stpjsr
