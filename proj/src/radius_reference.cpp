// Brute-force bounds: enumerate all m^j words by index, filter, and multiply
// each product out from scratch. Slow on purpose; it shares no traversal or
// pruning logic with the word-tree kernel it is used to check.
#include <chrono>
#include <cmath>
#include <functional>

#include "stpjsr/automaton.hpp"
#include "stpjsr/error.hpp"
#include "stpjsr/radius.hpp"

namespace stpjsr::reference {

namespace {

using Admissible = std::function<bool(const Word&)>;

BoundsResult brute_force(const ArbitrarySystem& s, std::size_t k, NormKind norm, const Admissible& admissible,
                         const Admissible& repeatable) {
  const auto start = std::chrono::steady_clock::now();
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "horizon k must be at least 1");
  BoundsResult r;
  r.requested_horizon = k;
  r.horizon = k;
  r.norm = norm_name(norm);
  bool have_lower = false;
  for (std::size_t j = 1; j <= k; ++j) {
    const double prior_lower = r.lower;
    LevelStats ls;
    ls.length = j;
    bool have_norm = false;
    const auto total = checked_power(s.arity(), j);
    // Index order is reverse-lexicographic, so ties are resolved by comparing words.
    for (std::uint64_t tau = 1; tau <= total; ++tau) {
      const Word w = index_to_word(tau, j, s.arity());
      if (!admissible(w)) continue;
      ++ls.words;
      const Matrix p = product(s, w);
      const double nv = matrix_norm(p, norm);
      if (!have_norm || nv > ls.max_norm || (nv == ls.max_norm && w < ls.norm_witness)) {
        ls.max_norm = nv;
        ls.norm_witness = w;
        have_norm = true;
      }
      if (!repeatable(w)) continue;
      const double rho = spectral_radius(p);
      if (!ls.max_rho || rho > *ls.max_rho || (rho == *ls.max_rho && w < ls.rho_witness)) {
        ls.max_rho = rho;
        ls.rho_witness = w;
      }
    }
    r.products_evaluated += ls.words;
    const double inv = 1.0 / static_cast<double>(j);
    if (ls.max_rho) {
      const double v = std::pow(*ls.max_rho, inv);
      if (!have_lower || v > r.lower) {
        r.lower = v;
        r.lower_witness = ls.rho_witness;
        have_lower = true;
      }
    }
    if (have_norm) {
      const double u = std::pow(ls.max_norm, inv);
      if (u < r.upper) {
        r.upper = u;
        r.upper_length = j;
      }
    }
    // pow rounding can push a root past the norm root that bounds it; keep
    // the bracket ordered without undoing earlier progress.
    if (have_lower && r.lower > r.upper) r.lower = r.upper = std::max(prior_lower, r.upper);
    r.levels.push_back(std::move(ls));
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

BoundsResult jsr_bounds(const ArbitrarySystem& s, std::size_t k, NormKind norm) {
  const auto all = [](const Word&) { return true; };
  return brute_force(s, k, norm, all, all);
}

BoundsResult cjsr_bounds(const ConstrainedSystem& c, std::size_t k, NormKind norm) {
  const auto sm = structure_matrices(c.dfa);
  // Repeatable words are those whose structure product has spectral radius 1.
  const auto periodic = [&](const Word& w) {
    Matrix f = sm.per_label[w.labels[0] - 1].dense();
    for (std::size_t i = 1; i < w.size(); ++i) f = sm.per_label[w.labels[i] - 1].dense() * f;
    return spectral_radius(f) > 0.5;
  };
  return brute_force(c.system, k, norm, [&](const Word& w) { return accepts(c.dfa, w); }, periodic);
}

BoundsResult markovian_bounds(const ArbitrarySystem& s, const Matrix& omega, std::size_t k, NormKind norm) {
  validate_omega(omega);
  const auto admissible = [&](const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (omega(w.labels[i + 1] - 1, w.labels[i] - 1) != 1.0) return false;
    return true;
  };
  const auto cyclic = [&](const Word& w) {
    return admissible(w) && omega(w.labels.front() - 1, w.labels.back() - 1) == 1.0;
  };
  return brute_force(s, k, norm, admissible, cyclic);
}

}  // namespace stpjsr::reference
