#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stpjsr/matrix.hpp"

namespace stpjsr {

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  double radius = 0.0;
};

/// Eigenvalues by Hessenberg reduction and shifted QR. Throws on non-square
/// input or when QR does not converge within `sweeps_per_row * n` iterations.
Spectrum eigenvalues(const Matrix& a, int sweeps_per_row = 100);

double spectral_radius(const Matrix& a);

/// Which sub-multiplicative norm to use. A nonzero `blocks` selects the block
/// norm max_j Σ_i ‖s_ij‖ over a blocks x blocks partition, with `base` applied
/// to each block.
struct NormKind {
  enum class Base { kInduced1, kInducedInf, kFrobenius, kInduced2 };

  Base base = Base::kInduced2;
  std::size_t blocks = 0;

  static NormKind plain(Base b) { return {b, 0}; }
  static NormKind block(Base b, std::size_t ell) { return {b, ell}; }

  [[nodiscard]] bool is_block() const noexcept { return blocks != 0; }

  friend bool operator==(const NormKind&, const NormKind&) = default;
};

/// "one", "inf", "fro", "two".
NormKind::Base parse_norm_base(std::string_view name);
std::string norm_name(NormKind kind);

/// Largest singular value by power iteration on aᵀa from the all-ones vector.
double induced2_norm(const Matrix& a, double rel_tol = 1e-10, int max_iter = 10'000);

double matrix_norm(const Matrix& a, NormKind kind);

/// Block norm of an (nℓ x nℓ) matrix over its ℓ x ℓ grid of n x n blocks.
double block_norm(const Matrix& s, std::size_t ell, NormKind::Base base);

}  // namespace stpjsr
