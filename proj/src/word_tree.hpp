// Depth-first exploration of the switching-word tree, shared by the
// fixed-horizon bound computations.
#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <vector>

#include "stpjsr/logical.hpp"
#include "stpjsr/matrix.hpp"
#include "stpjsr/radius.hpp"
#include "stpjsr/spectra.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stpjsr::detail {

// Every word is admissible and may be repeated.
struct Unconstrained {
  struct State {};
  State root() const { return {}; }
  bool extend(const State&, std::uint32_t, State&) const { return true; }
  bool repeatable(const State&) const { return true; }
};

// Tracks F_σ as column targets. A word survives while F_σ ≠ 0 and is
// repeatable when F_σ has a cycle (ρ(F_σ) = 1).
struct StructureConstraint {
  const std::vector<LogicalMatrix>* per_label;

  using State = std::vector<std::uint32_t>;
  State root() const { return LogicalMatrix::identity(per_label->front().rows()).col_targets(); }
  bool extend(const State& parent, std::uint32_t label, State& child) const {
    const auto& f = (*per_label)[label - 1].col_targets();
    child.resize(parent.size());
    bool alive = false;
    for (std::size_t j = 0; j < parent.size(); ++j) {
      child[j] = parent[j] == 0 ? 0 : f[parent[j] - 1];
      alive |= child[j] != 0;
    }
    return alive;
  }
  bool repeatable(const State& s) const { return functional_graph_has_cycle(s); }
};

// Consecutive labels must satisfy omega(next, previous) = 1; a word repeats
// when its first label may follow its last.
struct MarkovConstraint {
  const Matrix* omega;

  struct State {
    std::uint32_t first = 0;
    std::uint32_t last = 0;
  };
  State root() const { return {}; }
  bool extend(const State& parent, std::uint32_t label, State& child) const {
    if (parent.first == 0) {
      child = {label, label};
      return true;
    }
    if ((*omega)(label - 1, parent.last - 1) != 1.0) return false;
    child = {parent.first, label};
    return true;
  }
  bool repeatable(const State& s) const { return (*omega)(s.first - 1, s.last - 1) == 1.0; }
};

struct LevelAccumulator {
  std::uint64_t words = 0;
  double max_norm = -1.0;
  double max_rho = -1.0;
  std::vector<std::uint32_t> norm_word;
  std::vector<std::uint32_t> rho_word;

  // Earlier (lexicographically smaller) words win ties.
  void merge(const LevelAccumulator& later) {
    words += later.words;
    if (later.max_norm > max_norm) {
      max_norm = later.max_norm;
      norm_word = later.norm_word;
    }
    if (later.max_rho > max_rho) {
      max_rho = later.max_rho;
      rho_word = later.rho_word;
    }
  }
};

// Spectral radii are only computed when the norm could beat the incumbent;
// the slack absorbs the power-iteration tolerance of the induced 2-norm.
inline constexpr double kLazyRhoSlack = 1e-8;

template <class Constraint>
class WordTree {
 public:
  using State = typename Constraint::State;

  WordTree(const std::vector<Matrix>& matrices, Constraint constraint, NormKind norm)
      : matrices_(matrices), constraint_(std::move(constraint)), norm_(norm) {}

  // Per-level extremes for lengths 1..k; `products` receives the number of words visited.
  std::vector<LevelAccumulator> explore(std::size_t k, int threads, std::uint64_t& products) const {
    std::vector<LevelAccumulator> levels(k);
    const std::size_t split = split_depth(k);

    // Serial part: all words up to the split depth, remembering the frontier.
    std::vector<Frontier> frontier;
    {
      Cursor cur(k, constraint_.root());
      dfs(cur, 0, split, levels, &frontier);
    }
    if (split < k && !frontier.empty()) {
      std::vector<std::vector<LevelAccumulator>> partial(frontier.size());
      std::vector<std::exception_ptr> errors(frontier.size());
      const auto count = static_cast<std::int64_t>(frontier.size());
#ifdef _OPENMP
      const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
      for (std::int64_t t = 0; t < count; ++t) {
        try {
          const auto& f = frontier[static_cast<std::size_t>(t)];
          auto& local = partial[static_cast<std::size_t>(t)];
          local.resize(k);
          Cursor cur(k, constraint_.root());
          cur.labels = f.labels;
          cur.states[split] = f.state;
          cur.products[split] = f.product;
          dfs(cur, split, k, local, nullptr);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      }
      (void)threads;
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
      // Frontier order is lexicographic, so merging in order keeps ties deterministic.
      for (const auto& local : partial)
        for (std::size_t j = split; j < k; ++j) levels[j].merge(local[j]);
    }
    products = 0;
    for (const auto& l : levels) products += l.words;
    return levels;
  }

 private:
  struct Frontier {
    std::vector<std::uint32_t> labels;
    State state;
    Matrix product;
  };

  struct Cursor {
    std::vector<std::uint32_t> labels;
    std::vector<State> states;
    std::vector<Matrix> products;

    Cursor(std::size_t k, State root) : states(k + 1, root), products(k + 1) { labels.reserve(k); }
  };

  std::size_t split_depth(std::size_t k) const {
    // Depends only on m and k so the partition, and therefore every tie-break, is thread-count invariant.
    constexpr std::uint64_t kMinTasks = 64;
    std::size_t d = 0;
    std::uint64_t tasks = 1;
    while (d < k && tasks < kMinTasks) {
      tasks *= matrices_.size();
      ++d;
    }
    return d;
  }

  // Visits every admissible extension of cur.labels (length `from`) up to length `to`.
  void dfs(Cursor& cur, std::size_t from, std::size_t to, std::vector<LevelAccumulator>& levels,
           std::vector<Frontier>* frontier) const {
    const auto m = static_cast<std::uint32_t>(matrices_.size());
    std::vector<std::uint32_t> next(to + 1, 1);
    std::size_t depth = from;
    next[depth] = 1;
    while (true) {
      if (depth == to || next[depth] > m) {
        if (depth == from) return;
        --depth;
        cur.labels.pop_back();
        continue;
      }
      const std::uint32_t label = next[depth]++;
      if (!constraint_.extend(cur.states[depth], label, cur.states[depth + 1])) continue;
      if (depth == 0) {
        cur.products[1] = matrices_[label - 1];
      } else {
        multiply_into(matrices_[label - 1], cur.products[depth], cur.products[depth + 1]);
      }
      cur.labels.push_back(label);
      ++depth;
      visit(cur, depth, levels[depth - 1]);
      if (frontier != nullptr && depth == to) {
        frontier->push_back({cur.labels, cur.states[depth], cur.products[depth]});
      }
      next[depth] = 1;
    }
  }

  void visit(const Cursor& cur, std::size_t depth, LevelAccumulator& acc) const {
    const Matrix& p = cur.products[depth];
    ++acc.words;
    const double norm = matrix_norm(p, norm_);
    if (norm > acc.max_norm) {
      acc.max_norm = norm;
      acc.norm_word = cur.labels;
    }
    if (!constraint_.repeatable(cur.states[depth])) return;
    if (acc.max_rho >= 0.0 && norm < acc.max_rho * (1.0 - kLazyRhoSlack)) return;
    const double rho = spectral_radius(p);
    if (rho > acc.max_rho) {
      acc.max_rho = rho;
      acc.rho_word = cur.labels;
    }
  }

  const std::vector<Matrix>& matrices_;
  Constraint constraint_;
  NormKind norm_;
};

}  // namespace stpjsr::detail
