#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "stpjsr/logical.hpp"
#include "stpjsr/matrix.hpp"
#include "stpjsr/word.hpp"

namespace stpjsr {

/// Edge (from, to, label) of a DFA graph, all 1-based.
struct Edge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::uint32_t label = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Deterministic automaton without initial or final states: a partial
/// transition map over states [ℓ] and labels [m]. Every state must have at
/// least one outgoing transition.
class Dfa {
 public:
  /// Throws kNondeterministic on a repeated (from, label) pair, kOutOfRange on
  /// bad endpoints and kNotAlive if some state has no outgoing edge.
  Dfa(std::size_t num_states, std::size_t num_labels, const std::vector<Edge>& edges);

  /// Single-state DFA accepting every word over [m].
  static Dfa complete(std::size_t num_labels);

  [[nodiscard]] std::size_t num_states() const noexcept { return states_; }
  [[nodiscard]] std::size_t num_labels() const noexcept { return labels_; }

  /// f(state, label), or 0 where undefined.
  [[nodiscard]] std::uint32_t next(std::uint32_t state, std::uint32_t label) const {
    return table_[(state - 1) * labels_ + (label - 1)];
  }

  /// Edges sorted by (from, to, label).
  [[nodiscard]] std::vector<Edge> edges() const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  std::size_t states_ = 0;
  std::size_t labels_ = 0;
  std::vector<std::uint32_t> table_;
};

/// F_j[s, t] = 1 iff f(q_t, j) = q_s; `stacked` is [F_1, ..., F_m].
struct StructureMatrices {
  std::vector<LogicalMatrix> per_label;
  LogicalMatrix stacked;
};

StructureMatrices structure_matrices(const Dfa& d);

/// Rebuilds the DFA encoded by per-label structure matrices.
Dfa dfa_from_structure(const std::vector<LogicalMatrix>& per_label);

/// F_{σ_{k-1}} ··· F_{σ_0}.
LogicalMatrix f_product(const Dfa& d, const Word& w);

/// Whether some state path realizes w, by walking the set of live states.
bool accepts(const Dfa& d, const Word& w);

/// Calls `visit` on every accepted word of length k in lexicographic order,
/// extending prefixes depth-first and dropping any whose live state set is
/// empty. Stops early when `visit` returns false; returns false in that case.
bool for_each_accepted(const Dfa& d, std::size_t k, const std::function<bool(const Word&)>& visit);

struct AcceptedWords {
  std::vector<Word> words;
  bool truncated = false;
};

inline constexpr std::size_t kDefaultWordLimit = 10'000'000;

AcceptedWords enumerate_accepted(const Dfa& d, std::size_t k, std::size_t limit = kDefaultWordLimit);

/// Number of accepted words of each length 1..k, saturating at UINT64_MAX.
std::vector<std::uint64_t> count_accepted(const Dfa& d, std::size_t k);

/// DFA on m states (one per label) with f(q_j, i) = q_i iff omega(i, j) = 1.
/// Throws kNotAlive if omega has an all-zero column.
Dfa omega_to_dfa(const Matrix& omega);

/// Checks that omega is square 0/1; throws otherwise.
void validate_omega(const Matrix& omega);

}  // namespace stpjsr
