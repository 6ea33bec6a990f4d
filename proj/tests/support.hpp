// Shared fixtures, random generators and naive oracles for the test suites.
// The oracles are written from the definitions and deliberately avoid the
// library's own kron/stp/logical code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "stpjsr/automaton.hpp"
#include "stpjsr/matrix.hpp"
#include "stpjsr/systems.hpp"
#include "stpjsr/word.hpp"

namespace testing {

using stpjsr::ArbitrarySystem;
using stpjsr::ConstrainedSystem;
using stpjsr::Dfa;
using stpjsr::Edge;
using stpjsr::Matrix;
using stpjsr::Word;

inline ArbitrarySystem example1() {
  return ArbitrarySystem({
      Matrix{{0.94, 0.56}, {-0.35, 0.73}},
      Matrix{{0.94, 0.56}, {0.14, 0.73}},
      Matrix{{0.94, 0.56}, {-0.35, 0.46}},
      Matrix{{0.94, 0.56}, {0.14, 0.46}},
  });
}

// Columns of F_j read as f(q_t, j) = q_s.
inline Dfa example2() {
  const std::vector<std::vector<std::uint32_t>> f = {{3, 3, 3, 3}, {0, 1, 1, 0}, {2, 0, 2, 0}, {0, 0, 4, 0}};
  std::vector<Edge> edges;
  for (std::uint32_t j = 0; j < 4; ++j)
    for (std::uint32_t t = 0; t < 4; ++t)
      if (f[j][t] != 0) edges.push_back({t + 1, f[j][t], j + 1});
  return {4, 4, edges};
}

inline ConstrainedSystem example3() { return {example1(), example2()}; }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

  Matrix matrix(std::size_t rows, std::size_t cols, double scale = 1.0) {
    Matrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = scale * uniform();
    return a;
  }

  std::vector<double> vector(std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform();
    return v;
  }

  ArbitrarySystem system(std::size_t n, std::size_t m, double scale = 1.0) {
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < m; ++i) mats.push_back(matrix(n, n, scale));
    return ArbitrarySystem(std::move(mats));
  }

  // Alive DFA: every state gets at least one outgoing edge.
  Dfa dfa(std::size_t ell, std::size_t m, double density = 0.6) {
    std::vector<Edge> edges;
    for (std::uint32_t q = 1; q <= ell; ++q) {
      bool any = false;
      for (std::uint32_t j = 1; j <= m; ++j) {
        if (coin(density)) {
          edges.push_back({q, static_cast<std::uint32_t>(index(1, ell)), j});
          any = true;
        }
      }
      if (!any) edges.push_back({q, static_cast<std::uint32_t>(index(1, ell)), static_cast<std::uint32_t>(index(1, m))});
    }
    return {ell, m, edges};
  }

  // 0/1 matrix without zero rows or columns.
  Matrix omega(std::size_t m, double density = 0.5) {
    while (true) {
      Matrix w(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) w(i, j) = coin(density) ? 1.0 : 0.0;
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          row += w(i, j);
          col += w(j, i);
        }
        ok = row > 0.0 && col > 0.0;
      }
      if (ok) return w;
    }
  }

  Word word(std::size_t k, std::size_t m) {
    std::vector<std::uint32_t> labels(k);
    for (auto& l : labels) l = static_cast<std::uint32_t>(index(1, m));
    return {labels, m};
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline Matrix naive_mul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < a.cols(); ++t) s += a(i, t) * b(t, j);
      c(i, j) = s;
    }
  return c;
}

// (A ⊗ B)[(i·p + r), (j·q + s)] = A[i,j] B[r,s].
inline Matrix naive_kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s) c(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
  return c;
}

inline Matrix eye(std::size_t n) {
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 1.0;
  return c;
}

inline Matrix naive_stp(const Matrix& a, const Matrix& b) {
  const std::size_t s = std::lcm(a.cols(), b.rows());
  return naive_mul(naive_kron(a, eye(s / a.cols())), naive_kron(b, eye(s / b.rows())));
}

inline Matrix delta(std::size_t n, std::size_t i) {
  Matrix v(n, 1);
  if (i != 0) v(i - 1, 0) = 1.0;
  return v;
}

// Dense matrix whose column j is δ_n^{targets[j]}.
inline Matrix delta_matrix(std::size_t n, const std::vector<std::uint32_t>& targets) {
  Matrix d(n, targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j)
    if (targets[j] != 0) d(targets[j] - 1, j) = 1.0;
  return d;
}

inline Matrix column(const std::vector<double>& x) {
  Matrix c(x.size(), 1);
  for (std::size_t i = 0; i < x.size(); ++i) c(i, 0) = x[i];
  return c;
}

inline double max_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

// A_{σ_{k-1}} ··· A_{σ_0} by repeated naive multiplication.
inline Matrix naive_product(const std::vector<Matrix>& mats, const Word& w) {
  Matrix acc = mats[w.labels[0] - 1];
  for (std::size_t i = 1; i < w.size(); ++i) acc = naive_mul(mats[w.labels[i] - 1], acc);
  return acc;
}

// Whether some state sequence q_0 -σ_0-> q_1 -σ_1-> ... exists, by trying every start state.
inline bool naive_accepts(const Dfa& d, const Word& w) {
  for (std::uint32_t start = 1; start <= d.num_states(); ++start) {
    std::uint32_t q = start;
    for (auto l : w.labels) {
      q = d.next(q, l);
      if (q == 0) break;
    }
    if (q != 0) return true;
  }
  return false;
}

inline std::vector<Word> all_words(std::size_t k, std::size_t m) {
  std::vector<Word> out;
  std::vector<std::uint32_t> labels(k, 1);
  while (true) {
    out.emplace_back(labels, m);
    std::size_t i = k;
    while (i > 0 && labels[i - 1] == m) labels[--i] = 1;
    if (i == 0) break;
    ++labels[i - 1];
  }
  return out;
}

// Roots of x^3 + a x^2 + b x + c by Cardano's formula.
inline std::vector<std::complex<double>> cubic_roots(double a, double b, double c) {
  using C = std::complex<double>;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const C disc = std::sqrt(C(q * q / 4.0 + p * p * p / 27.0));
  C u = std::pow(C(-q / 2.0) + disc, 1.0 / 3.0);
  if (std::abs(u) < 1e-300) u = std::pow(C(-q / 2.0) - disc, 1.0 / 3.0);
  const C omega(-0.5, std::sqrt(3.0) / 2.0);
  std::vector<C> roots;
  for (int r = 0; r < 3; ++r) {
    const C ur = u * std::pow(omega, r);
    const C v = std::abs(ur) < 1e-300 ? C(0.0) : -p / (3.0 * ur);
    C x = ur + v - a / 3.0;
    // Newton polishing against cancellation in the closed form.
    for (int it = 0; it < 3; ++it) {
      const C f = ((x + a) * x + b) * x + c;
      const C df = (3.0 * x + 2.0 * a) * x + b;
      if (std::abs(df) < 1e-12) break;
      x -= f / df;
    }
    roots.push_back(x);
  }
  return roots;
}

// Largest distance in an optimal-by-greedy matching of two equal-size multisets.
inline double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < b.size(); ++i)
      if (std::abs(b[i] - x) < std::abs(b[best] - x)) best = i;
    worst = std::max(worst, std::abs(b[best] - x));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace testing
