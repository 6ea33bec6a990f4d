#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stpjsr {

/// A switching word σ_0 σ_1 ... σ_{k-1} over the alphabet [arity], labels 1-based.
/// σ_0 is applied first.
struct Word {
  std::vector<std::uint32_t> labels;
  std::size_t arity = 1;

  Word() = default;
  Word(std::vector<std::uint32_t> labels, std::size_t arity);

  [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
  [[nodiscard]] bool empty() const noexcept { return labels.empty(); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.labels <=> b.labels; }
};

/// Renders labels as digits ("231") when every label is < 10, else comma-separated.
std::string to_string(const Word& w);

/// Parses "231" or "2,3,1" into a word over [arity]; throws on out-of-range labels.
Word parse_word(std::string_view text, std::size_t arity);

/// Position τ ∈ [m^k] of the word's vector form δ_m^{σ_{k-1}} ⋉ ... ⋉ δ_m^{σ_0} = δ_{m^k}^τ.
std::uint64_t word_to_index(const Word& w);

/// Inverse of word_to_index for words of length k over [m].
Word index_to_word(std::uint64_t tau, std::size_t k, std::size_t m);

/// m^k, throwing if it does not fit in 64 bits.
std::uint64_t checked_power(std::size_t m, std::size_t k);

}  // namespace stpjsr
