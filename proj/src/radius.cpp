#include "stpjsr/radius.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "stpjsr/error.hpp"
#include "word_tree.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stpjsr {

Verdict verdict(const BoundsResult& r) {
  if (r.upper < 1.0) return Verdict::kStable;
  if (r.lower >= 1.0) return Verdict::kUnstable;
  return Verdict::kUndetermined;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kStable: return "stable";
    case Verdict::kUnstable: return "unstable";
    case Verdict::kUndetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr auto kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

// Largest horizon <= k whose cumulative word count fits in the cap.
std::size_t fit_horizon(const std::vector<std::uint64_t>& counts, std::uint64_t cap) {
  std::uint64_t total = 0;
  std::size_t horizon = 0;
  for (auto c : counts) {
    total = saturating_add(total, c);
    if (total > cap) break;
    ++horizon;
  }
  if (horizon == 0) {
    throw Error(ErrorCode::kCapExceeded, "even words of length 1 exceed the product cap of " + std::to_string(cap));
  }
  return horizon;
}

std::vector<std::uint64_t> unconstrained_counts(std::size_t m, std::size_t k) {
  std::vector<std::uint64_t> counts;
  std::uint64_t c = 1;
  for (std::size_t j = 0; j < k; ++j) counts.push_back(c = saturating_mul(c, m));
  return counts;
}

std::vector<std::uint64_t> markov_counts(const Matrix& omega, std::size_t k) {
  const std::size_t m = omega.rows();
  std::vector<std::uint64_t> by_last(m, 1);
  std::vector<std::uint64_t> counts;
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0) {
      std::vector<std::uint64_t> grown(m, 0);
      for (std::size_t next = 0; next < m; ++next)
        for (std::size_t last = 0; last < m; ++last)
          if (omega(next, last) == 1.0) grown[next] = saturating_add(grown[next], by_last[last]);
      by_last.swap(grown);
    }
    std::uint64_t total = 0;
    for (auto c : by_last) total = saturating_add(total, c);
    counts.push_back(total);
  }
  return counts;
}

Word to_word(const std::vector<std::uint32_t>& labels, std::size_t m) { return labels.empty() ? Word() : Word(labels, m); }

BoundsResult assemble(const std::vector<detail::LevelAccumulator>& levels, std::size_t m, std::size_t requested,
                      NormKind norm, std::uint64_t products, Clock::time_point start) {
  BoundsResult r;
  r.requested_horizon = requested;
  r.horizon = levels.size();
  r.truncated = levels.size() < requested;
  r.norm = norm_name(norm);
  r.products_evaluated = products;
  bool have_lower = false;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& acc = levels[i];
    const double inv = 1.0 / static_cast<double>(i + 1);
    const double prior_lower = r.lower;
    LevelStats ls;
    ls.length = i + 1;
    ls.words = acc.words;
    ls.max_norm = std::max(acc.max_norm, 0.0);
    ls.norm_witness = to_word(acc.norm_word, m);
    if (acc.max_rho >= 0.0) {
      ls.max_rho = acc.max_rho;
      ls.rho_witness = to_word(acc.rho_word, m);
      // Ascending lengths with a strict comparison keep the shortest witness on ties.
      const double v = std::pow(acc.max_rho, inv);
      if (!have_lower || v > r.lower) {
        r.lower = v;
        r.lower_witness = ls.rho_witness;
        have_lower = true;
      }
    }
    if (acc.words > 0) {
      const double u = std::pow(ls.max_norm, inv);
      if (u < r.upper) {
        r.upper = u;
        r.upper_length = i + 1;
      }
    }
    // pow rounding can push a root past the norm root that bounds it; keep
    // the bracket ordered without undoing earlier progress.
    if (have_lower && r.lower > r.upper) r.lower = r.upper = std::max(prior_lower, r.upper);
    r.levels.push_back(std::move(ls));
  }
  r.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

template <class Constraint>
BoundsResult run_tree(const std::vector<Matrix>& matrices, Constraint constraint, NormKind norm, std::size_t k,
                      const std::vector<std::uint64_t>& counts, const BoundsOptions& opts) {
  const auto start = Clock::now();
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "horizon k must be at least 1");
  const std::size_t horizon = fit_horizon(counts, opts.product_cap);
  detail::WordTree<Constraint> tree(matrices, std::move(constraint), norm);
  std::uint64_t products = 0;
  const auto levels = tree.explore(horizon, opts.threads, products);
  return assemble(levels, matrices.size(), k, norm, products, start);
}

void check_omega_alive(const Matrix& omega, std::size_t m) {
  validate_omega(omega);
  if (omega.rows() != m) throw Error(ErrorCode::kDimension, "omega size does not match the number of matrices");
  for (std::size_t j = 0; j < m; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) any |= omega(i, j) == 1.0;
    if (!any) throw Error(ErrorCode::kNotAlive, "omega column " + std::to_string(j + 1) + " is all zero");
  }
}

}  // namespace

BoundsResult jsr_bounds(const ArbitrarySystem& s, std::size_t k, NormKind norm, const BoundsOptions& opts) {
  return run_tree(s.matrices(), detail::Unconstrained{}, norm, k, unconstrained_counts(s.arity(), k), opts);
}

BoundsResult cjsr_bounds(const ConstrainedSystem& c, std::size_t k, NormKind norm, const BoundsOptions& opts) {
  const auto sm = structure_matrices(c.dfa);
  return run_tree(c.system.matrices(), detail::StructureConstraint{&sm.per_label}, norm, k,
                  count_accepted(c.dfa, k), opts);
}

BoundsResult cjsr_bounds_via_lift(const ConstrainedSystem& c, std::size_t k, NormKind::Base base,
                                  const BoundsOptions& opts) {
  const auto lifted = stp_lift(c);
  const auto sm = structure_matrices(c.dfa);
  // Φ_σ = F_σ ⊗ A_σ: it vanishes with F_σ, and is nilpotent (ρ = 0) when F_σ has no cycle.
  return run_tree(lifted.phis, detail::StructureConstraint{&sm.per_label},
                  NormKind::block(base, c.dfa.num_states()), k, count_accepted(c.dfa, k), opts);
}

BoundsResult markovian_bounds(const ArbitrarySystem& s, const Matrix& omega, std::size_t k, NormKind norm,
                              const BoundsOptions& opts) {
  check_omega_alive(omega, s.arity());
  return run_tree(s.matrices(), detail::MarkovConstraint{&omega}, norm, k, markov_counts(omega, k), opts);
}

namespace {

struct Node {
  std::vector<std::uint32_t> word;
  Matrix product;
  double bound = 0.0;
};

// Heap order: larger bound first, then lexicographically smaller word.
struct LowerPriority {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.word > b.word;
  }
};

struct Child {
  Node node;
  double rho_root = -1.0;  // ρ^{1/L}, or -1 when it could not beat the incumbent
};

// Total order on candidate witnesses: value, then shorter, then lexicographic.
bool better_witness(double value, const std::vector<std::uint32_t>& w, double best,
                    const std::vector<std::uint32_t>& best_word) {
  if (best_word.empty()) return true;
  if (value != best) return value > best;
  if (w.size() != best_word.size()) return w.size() < best_word.size();
  return w < best_word;
}

constexpr std::size_t kBatch = 16;

}  // namespace

BoundsResult gripenberg(const ArbitrarySystem& s, double delta, NormKind norm, std::uint64_t max_products,
                        int threads) {
  const auto start = Clock::now();
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be positive");
  const auto& mats = s.matrices();
  const std::size_t m = mats.size();

  double alpha = 0.0;
  std::vector<std::uint32_t> alpha_word;
  std::uint64_t products = 0;
  std::size_t deepest = 0;

  std::vector<Node> heap;
  heap.push_back({{}, Matrix::identity(s.dim()), std::numeric_limits<double>::infinity()});
  const LowerPriority order;

  bool truncated = false;
  while (!heap.empty()) {
    if (heap.front().bound <= alpha + delta) break;
    const std::uint64_t budget_nodes = (max_products - products) / m;
    if (budget_nodes == 0) {
      truncated = true;
      break;
    }
    std::vector<Node> batch;
    while (!heap.empty() && batch.size() < kBatch && batch.size() < budget_nodes &&
           heap.front().bound > alpha + delta) {
      std::pop_heap(heap.begin(), heap.end(), order);
      batch.push_back(std::move(heap.back()));
      heap.pop_back();
    }

    const double alpha_snapshot = alpha;
    std::vector<Child> children(batch.size() * m);
    std::vector<std::exception_ptr> errors(children.size());
    const auto count = static_cast<std::int64_t>(children.size());
#ifdef _OPENMP
    const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(workers)
#endif
    for (std::int64_t c = 0; c < count; ++c) {
      try {
        const auto idx = static_cast<std::size_t>(c);
        const Node& parent = batch[idx / m];
        const auto label = static_cast<std::uint32_t>(idx % m + 1);
        Child& out = children[idx];
        out.node.word = parent.word;
        out.node.word.push_back(label);
        if (parent.word.empty()) {
          out.node.product = mats[label - 1];
        } else {
          multiply_into(mats[label - 1], parent.product, out.node.product);
        }
        const double inv = 1.0 / static_cast<double>(out.node.word.size());
        const double norm_root = std::pow(matrix_norm(out.node.product, norm), inv);
        out.node.bound = std::min(parent.bound, norm_root);
        if (norm_root >= alpha_snapshot * (1.0 - detail::kLazyRhoSlack) && !out.node.product.is_zero()) {
          out.rho_root = std::pow(spectral_radius(out.node.product), inv);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    }
    (void)threads;
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);

    products += children.size();
    for (const auto& child : children) {
      deepest = std::max(deepest, child.node.word.size());
      if (child.rho_root >= 0.0 && better_witness(child.rho_root, child.node.word, alpha, alpha_word)) {
        alpha = child.rho_root;
        alpha_word = child.node.word;
      }
    }
    for (auto& child : children) {
      if (child.node.bound > alpha + delta) {
        heap.push_back(std::move(child.node));
        std::push_heap(heap.begin(), heap.end(), order);
      }
    }
  }

  BoundsResult r;
  r.delta = delta;
  r.norm = norm_name(norm);
  r.lower = alpha;
  r.lower_witness = to_word(alpha_word, m);
  r.horizon = deepest;
  r.products_evaluated = products;
  r.truncated = truncated && !heap.empty() && heap.front().bound > alpha + delta;
  r.upper = r.truncated ? std::max(alpha + delta, heap.front().bound) : alpha + delta;
  r.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace stpjsr
