#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stpjsr/automaton.hpp"
#include "stpjsr/logical.hpp"
#include "stpjsr/matrix.hpp"
#include "stpjsr/word.hpp"

namespace stpjsr {

/// The matrix set {A_1, ..., A_m} of an arbitrarily switched system
/// x(k+1) = A_{σ_k} x(k), together with H = [A_1, ..., A_m].
class ArbitrarySystem {
 public:
  explicit ArbitrarySystem(std::vector<Matrix> matrices);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t arity() const noexcept { return matrices_.size(); }
  [[nodiscard]] const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  [[nodiscard]] const Matrix& matrix(std::uint32_t label) const { return matrices_.at(label - 1); }
  [[nodiscard]] const Matrix& h() const noexcept { return h_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Matrix> matrices_;
  Matrix h_;
};

/// A matrix set whose switching words must be accepted by a DFA.
struct ConstrainedSystem {
  ArbitrarySystem system;
  Dfa dfa;

  ConstrainedSystem(ArbitrarySystem system, Dfa dfa);
};

/// The arbitrary system {Φ_i = F_i ⊗ A_i} obtained from a constrained one.
struct LiftedSystem {
  ConstrainedSystem base;
  std::vector<Matrix> phis;

  [[nodiscard]] std::size_t dim() const noexcept { return phis.front().rows(); }
  [[nodiscard]] ArbitrarySystem as_arbitrary() const { return ArbitrarySystem(phis); }
};

/// x(k+1) = H ⋉ δ_m^label ⋉ x(k).
std::vector<double> step(const ArbitrarySystem& s, std::uint32_t label, const std::vector<double>& x);

/// A_{σ_{k-1}} ··· A_{σ_0}.
Matrix product(const ArbitrarySystem& s, const Word& w);

/// H̃_k = H ⋉ (I_m ⊗ H) ⋉ ... ⋉ (I_{m^{k-1}} ⊗ H), an n x n·m^k matrix whose
/// τ-th n x n block is product(s, index_to_word(τ, k, m)).
Matrix h_tilde(const ArbitrarySystem& s, std::size_t k, std::size_t element_cap = kDefaultElementCap);

LiftedSystem stp_lift(const ConstrainedSystem& c);

/// ξ = q ⋉ x = q ⊗ x; the zero vector when q is δ_ℓ^0.
std::vector<double> lifted_state(const DeltaVector& q, const std::vector<double>& x);

/// ξ(k+1) = Φ_label ξ(k). Labels the DFA rejects from the current state give zero.
std::vector<double> lifted_step(const LiftedSystem& lifted, std::uint32_t label, const std::vector<double>& xi);

/// Constrained system over accepted words of length t. Labels are dense in
/// [m'] and ordered lexicographically by the word they stand for.
struct TProductSystem {
  ConstrainedSystem system;
  std::vector<Word> label_words;
};

TProductSystem t_product_lift(const ConstrainedSystem& c, std::size_t t, std::size_t word_limit = kDefaultWordLimit);

/// {Ω_i ⊗ A_i}, where Ω_i keeps row i of omega and zeroes the rest, so that
/// Ω_{σ_{k-1}} ··· Ω_{σ_0} ≠ 0 exactly for admissible words.
ArbitrarySystem omega_lift(const ArbitrarySystem& s, const Matrix& omega);

/// One matrix (δ_ℓ^to (δ_ℓ^from)ᵀ) ⊗ A_label per DFA edge.
struct EdgeLiftTerm {
  Edge edge;
  Matrix matrix;
};

std::vector<EdgeLiftTerm> edge_lift(const ConstrainedSystem& c);

}  // namespace stpjsr
