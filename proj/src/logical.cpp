#include "stpjsr/logical.hpp"

#include <algorithm>
#include <string>

#include "stpjsr/error.hpp"

namespace stpjsr {

DeltaVector::DeltaVector(std::size_t dim, std::size_t index) : dim(dim), index(index) {
  if (dim == 0) throw Error(ErrorCode::kDimension, "delta vector dimension must be positive");
  if (index > dim) {
    throw Error(ErrorCode::kOutOfRange,
                "delta index " + std::to_string(index) + " exceeds dimension " + std::to_string(dim));
  }
}

Matrix DeltaVector::dense() const {
  Matrix out(dim, 1);
  if (index != 0) out(index - 1, 0) = 1.0;
  return out;
}

DeltaVector stp(const DeltaVector& a, const DeltaVector& b) {
  const std::size_t dim = a.dim * b.dim;
  if (a.is_zero() || b.is_zero()) return {dim, 0};
  return {dim, (a.index - 1) * b.dim + b.index};
}

LogicalMatrix::LogicalMatrix(std::size_t rows, std::vector<std::uint32_t> col_targets)
    : rows_(rows), targets_(std::move(col_targets)) {
  if (rows_ == 0) throw Error(ErrorCode::kDimension, "logical matrix needs at least one row");
  for (auto t : targets_) {
    if (t > rows_) {
      throw Error(ErrorCode::kOutOfRange,
                  "column target " + std::to_string(t) + " exceeds row count " + std::to_string(rows_));
    }
  }
}

LogicalMatrix LogicalMatrix::identity(std::size_t n) {
  std::vector<std::uint32_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<std::uint32_t>(i + 1);
  return {n, std::move(t)};
}

LogicalMatrix LogicalMatrix::zeros(std::size_t rows, std::size_t cols) {
  return {rows, std::vector<std::uint32_t>(cols, 0)};
}

LogicalMatrix LogicalMatrix::from_dense(const Matrix& m) {
  std::vector<std::uint32_t> t(m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double v = m(i, j);
      if (v == 0.0) continue;
      if (v != 1.0 || t[j] != 0) throw Error(ErrorCode::kInvalidArgument, "matrix is not logical");
      t[j] = static_cast<std::uint32_t>(i + 1);
    }
  }
  return {m.rows(), std::move(t)};
}

bool LogicalMatrix::is_zero() const noexcept {
  return std::all_of(targets_.begin(), targets_.end(), [](std::uint32_t t) { return t == 0; });
}

bool functional_graph_has_cycle(std::span<const std::uint32_t> targets) {
  const std::size_t n = targets.size();
  // 0 = unvisited, 1 = on the current path, 2 = finished.
  std::vector<std::uint8_t> color(n + 1, 0);
  for (std::size_t start = 1; start <= n; ++start) {
    if (color[start] != 0) continue;
    std::size_t v = start;
    while (v != 0 && color[v] == 0) {
      color[v] = 1;
      v = targets[v - 1];
    }
    if (v != 0 && color[v] == 1) return true;
    for (std::size_t u = start; u != 0 && color[u] == 1; u = targets[u - 1]) color[u] = 2;
  }
  return false;
}

bool LogicalMatrix::has_cycle() const {
  if (rows_ != cols()) throw Error(ErrorCode::kDimension, "has_cycle needs a square matrix");
  return functional_graph_has_cycle(targets_);
}

Matrix LogicalMatrix::dense() const {
  Matrix out(rows_, cols());
  for (std::size_t j = 0; j < cols(); ++j)
    if (targets_[j] != 0) out(targets_[j] - 1, j) = 1.0;
  return out;
}

DeltaVector LogicalMatrix::apply(const DeltaVector& v) const {
  if (v.dim != cols()) throw Error(ErrorCode::kDimension, "delta vector dimension does not match columns");
  if (v.is_zero()) return {rows_, 0};
  return {rows_, targets_[v.index - 1]};
}

void compose_into(const LogicalMatrix& a, const LogicalMatrix& b, LogicalMatrix& out) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kDimension, "logical product dimension mismatch");
  std::vector<std::uint32_t> t(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const auto mid = b.target(j);
    t[j] = mid == 0 ? 0 : a.target(mid - 1);
  }
  out = LogicalMatrix(a.rows(), std::move(t));
}

LogicalMatrix compose(const LogicalMatrix& a, const LogicalMatrix& b) {
  LogicalMatrix out;
  compose_into(a, b, out);
  return out;
}

LogicalMatrix swap_matrix(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw Error(ErrorCode::kDimension, "swap matrix dimensions must be positive");
  // Column (i-1)m + j holds δ_m^j ⋉ δ_n^i = δ_{mn}^{(j-1)n + i}.
  std::vector<std::uint32_t> t(n * m);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) t[(i - 1) * m + (j - 1)] = static_cast<std::uint32_t>((j - 1) * n + i);
  return {n * m, std::move(t)};
}

LogicalMatrix power_reducing_matrix(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kDimension, "power-reducing matrix dimension must be positive");
  std::vector<std::uint32_t> t(n);
  for (std::size_t i = 1; i <= n; ++i) t[i - 1] = static_cast<std::uint32_t>((i - 1) * n + i);
  return {n * n, std::move(t)};
}

}  // namespace stpjsr
