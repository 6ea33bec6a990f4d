#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stpjsr/matrix.hpp"

namespace stpjsr {

/// δ_n^index, with index 0 standing for the zero vector of length n.
struct DeltaVector {
  std::size_t dim = 1;
  std::size_t index = 0;

  DeltaVector() = default;
  DeltaVector(std::size_t dim, std::size_t index);

  [[nodiscard]] bool is_zero() const noexcept { return index == 0; }
  [[nodiscard]] Matrix dense() const;

  friend bool operator==(const DeltaVector&, const DeltaVector&) = default;
};

/// δ_p^i ⋉ δ_q^j = δ_{pq}^{(i-1)q + j}; zero if either factor is zero.
DeltaVector stp(const DeltaVector& a, const DeltaVector& b);

/// A 0/1 matrix with at most one 1 per column, stored as the row index of
/// that 1 for every column (1-based, 0 for a zero column). Written
/// δ_n[t_1, ..., t_c].
class LogicalMatrix {
 public:
  LogicalMatrix() = default;
  LogicalMatrix(std::size_t rows, std::vector<std::uint32_t> col_targets);

  static LogicalMatrix identity(std::size_t n);
  static LogicalMatrix zeros(std::size_t rows, std::size_t cols);
  /// Inverse of dense(); throws if `m` is not 0/1 with at most one 1 per column.
  static LogicalMatrix from_dense(const Matrix& m);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return targets_.size(); }
  [[nodiscard]] const std::vector<std::uint32_t>& col_targets() const noexcept { return targets_; }
  [[nodiscard]] std::uint32_t target(std::size_t col) const { return targets_[col]; }

  [[nodiscard]] bool is_zero() const noexcept;
  /// True if some column index is mapped back to itself after repeated
  /// application, i.e. the spectral radius is 1 rather than 0. Square only.
  [[nodiscard]] bool has_cycle() const;
  [[nodiscard]] Matrix dense() const;

  /// Image of a delta vector: column `v.index` of this matrix.
  [[nodiscard]] DeltaVector apply(const DeltaVector& v) const;

  friend bool operator==(const LogicalMatrix&, const LogicalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::uint32_t> targets_;
};

/// Whether the partial map j -> targets[j-1] on [targets.size()] has a cycle.
bool functional_graph_has_cycle(std::span<const std::uint32_t> targets);

/// Ordinary product a·b by index composition, O(cols(b)).
LogicalMatrix compose(const LogicalMatrix& a, const LogicalMatrix& b);

/// compose(a, b) written into `out`.
void compose_into(const LogicalMatrix& a, const LogicalMatrix& b, LogicalMatrix& out);

/// W_[n,m], the nm x nm permutation with W ⋉ x ⋉ y = y ⋉ x for x ∈ R^n, y ∈ R^m.
LogicalMatrix swap_matrix(std::size_t n, std::size_t m);

/// Φ_n = diag(δ_n^1, ..., δ_n^n) ∈ L_{n²×n}, so that x ⋉ x = Φ_n x for x ∈ Δ_n.
LogicalMatrix power_reducing_matrix(std::size_t n);

}  // namespace stpjsr
