#include "stpjsr/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "stpjsr/error.hpp"

namespace stpjsr {

Spectrum eigenvalues(const Matrix& a, int sweeps_per_row) {
  if (!a.square()) {
    throw Error(ErrorCode::kDimension, "eigenvalues of a " + std::to_string(a.rows()) + "x" +
                                           std::to_string(a.cols()) + " matrix");
  }
  const auto n = static_cast<Eigen::Index>(a.rows());
  Spectrum out;
  if (n == 0) return out;
  if (n == 1) {
    out.eigenvalues = {a(0, 0)};
    out.radius = std::abs(a(0, 0));
    return out;
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);

  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(sweeps_per_row * n);
  solver.compute(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNoConvergence, "QR iteration did not converge for a " + std::to_string(n) + "x" +
                                               std::to_string(n) + " matrix");
  }
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues.push_back(ev(i));
    out.radius = std::max(out.radius, std::abs(ev(i)));
  }
  return out;
}

double spectral_radius(const Matrix& a) { return eigenvalues(a).radius; }

NormKind::Base parse_norm_base(std::string_view name) {
  if (name == "one") return NormKind::Base::kInduced1;
  if (name == "inf") return NormKind::Base::kInducedInf;
  if (name == "fro") return NormKind::Base::kFrobenius;
  if (name == "two") return NormKind::Base::kInduced2;
  throw Error(ErrorCode::kInvalidArgument, "unknown norm '" + std::string(name) + "' (expected one|inf|fro|two)");
}

std::string norm_name(NormKind kind) {
  std::string base;
  switch (kind.base) {
    case NormKind::Base::kInduced1: base = "one"; break;
    case NormKind::Base::kInducedInf: base = "inf"; break;
    case NormKind::Base::kFrobenius: base = "fro"; break;
    case NormKind::Base::kInduced2: base = "two"; break;
  }
  if (!kind.is_block()) return base;
  return "block(" + base + "," + std::to_string(kind.blocks) + ")";
}

namespace {

// y = aᵀ(a x); returns ‖a x‖².
double gram_apply(const Matrix& a, const std::vector<double>& x, std::vector<double>& ax, std::vector<double>& y) {
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  double ax2 = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < c; ++j) s += a(i, j) * x[j];
    ax[i] = s;
    ax2 += s * s;
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) y[j] += a(i, j) * ax[i];
  return ax2;
}

double sum_squares(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

double induced2_norm(const Matrix& a, double rel_tol, int max_iter) {
  if (a.is_zero()) return 0.0;
  const std::size_t c = a.cols();
  std::vector<double> x(c, 1.0);
  std::vector<double> ax(a.rows());
  std::vector<double> y(c);
  double lambda = 0.0;
  bool reseeded = false;
  for (int it = 0; it < max_iter; ++it) {
    const double xx = sum_squares(x);
    const double ax2 = gram_apply(a, x, ax, y);
    lambda = std::max(lambda, ax2 / xx);
    const double yy = sum_squares(y);
    if (yy == 0.0) {
      // The iterate fell into the null space; restart from a fixed non-symmetric vector.
      if (reseeded) break;
      reseeded = true;
      for (std::size_t j = 0; j < c; ++j) x[j] = 1.0 + 0.5 / static_cast<double>(j + 1);
      continue;
    }
    // Rayleigh quotient of aᵀa at x and the residual ‖aᵀa x - ρ x‖.
    const double rho = ax2 / xx;
    double res2 = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      const double d = y[j] - rho * x[j];
      res2 += d * d;
    }
    const double inv = 1.0 / std::sqrt(yy);
    for (std::size_t j = 0; j < c; ++j) x[j] = y[j] * inv;
    if (std::sqrt(res2 / xx) <= rel_tol * rho) {
      const double ax2n = gram_apply(a, x, ax, y);
      lambda = std::max(lambda, ax2n);
      break;
    }
  }
  return std::sqrt(lambda);
}

namespace {

double base_norm(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols,
                 NormKind::Base base) {
  switch (base) {
    case NormKind::Base::kInduced1: {
      double best = 0.0;
      for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += std::abs(a(r0 + i, c0 + j));
        best = std::max(best, s);
      }
      return best;
    }
    case NormKind::Base::kInducedInf: {
      double best = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += std::abs(a(r0 + i, c0 + j));
        best = std::max(best, s);
      }
      return best;
    }
    case NormKind::Base::kFrobenius: {
      double s = 0.0;
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) s += a(r0 + i, c0 + j) * a(r0 + i, c0 + j);
      return std::sqrt(s);
    }
    case NormKind::Base::kInduced2:
      if (r0 == 0 && c0 == 0 && rows == a.rows() && cols == a.cols()) return induced2_norm(a);
      return induced2_norm(a.block(r0, c0, rows, cols));
  }
  return 0.0;
}

}  // namespace

double block_norm(const Matrix& s, std::size_t ell, NormKind::Base base) {
  if (ell == 0 || !s.square() || s.rows() % ell != 0) {
    throw Error(ErrorCode::kDimension, "block norm with " + std::to_string(ell) + " blocks on a " +
                                           std::to_string(s.rows()) + "x" + std::to_string(s.cols()) + " matrix");
  }
  const std::size_t n = s.rows() / ell;
  double best = 0.0;
  for (std::size_t j = 0; j < ell; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < ell; ++i) {
      bool zero = true;
      for (std::size_t p = 0; p < n && zero; ++p)
        for (std::size_t q = 0; q < n; ++q)
          if (s(i * n + p, j * n + q) != 0.0) {
            zero = false;
            break;
          }
      if (!zero) col += base_norm(s, i * n, j * n, n, n, base);
    }
    best = std::max(best, col);
  }
  return best;
}

double matrix_norm(const Matrix& a, NormKind kind) {
  if (kind.is_block()) return block_norm(a, kind.blocks, kind.base);
  return base_norm(a, 0, 0, a.rows(), a.cols(), kind.base);
}

}  // namespace stpjsr
