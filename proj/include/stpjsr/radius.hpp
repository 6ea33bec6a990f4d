#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "stpjsr/matrix.hpp"
#include "stpjsr/spectra.hpp"
#include "stpjsr/systems.hpp"
#include "stpjsr/word.hpp"

namespace stpjsr {

/// Extremes over all admissible words of one length.
struct LevelStats {
  std::size_t length = 0;
  std::uint64_t words = 0;
  double max_norm = 0.0;
  Word norm_witness;
  /// Largest spectral radius among words that may be repeated forever; empty
  /// if there is none of this length.
  std::optional<double> max_rho;
  Word rho_witness;
};

/// A certified bracket lower <= ρ <= upper.
struct BoundsResult {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  Word lower_witness;
  /// Word length whose level produced `upper`; 0 for Gripenberg.
  std::size_t upper_length = 0;
  /// Horizon actually covered (fixed-horizon methods) or deepest word expanded (Gripenberg).
  std::size_t horizon = 0;
  std::size_t requested_horizon = 0;
  double delta = 0.0;
  std::uint64_t products_evaluated = 0;
  double wall_time = 0.0;
  /// The product cap stopped the computation early; bounds are valid but wider.
  bool truncated = false;
  std::string norm;
  std::vector<LevelStats> levels;
};

enum class Verdict { kStable, kUnstable, kUndetermined };

/// Stable iff upper < 1, unstable iff lower >= 1.
Verdict verdict(const BoundsResult& r);
std::string to_string(Verdict v);

inline constexpr std::uint64_t kDefaultProductCap = 10'000'000;

struct BoundsOptions {
  /// Words whose product may be formed; the horizon shrinks to fit.
  std::uint64_t product_cap = kDefaultProductCap;
  /// OpenMP worker count; 0 keeps the runtime default. Results do not depend on it.
  int threads = 0;
};

/// Running best of max ρ(A_σ)^{1/j} and min over j of max ‖A_σ‖^{1/j}, j <= k.
BoundsResult jsr_bounds(const ArbitrarySystem& s, std::size_t k, NormKind norm = {}, const BoundsOptions& opts = {});

/// As jsr_bounds over DFA-accepted words. Upper bounds use every accepted
/// word; lower bounds only words σ whose F_σ has a cycle, since only those
/// extend to an accepted infinite word σσσ...
BoundsResult cjsr_bounds(const ConstrainedSystem& c, std::size_t k, NormKind norm = {}, const BoundsOptions& opts = {});

/// jsr_bounds on the lifted set {F_i ⊗ A_i} under the block norm over `base`.
/// Rejected words are recognized from the logical product F_σ and skipped.
BoundsResult cjsr_bounds_via_lift(const ConstrainedSystem& c, std::size_t k,
                                  NormKind::Base base = NormKind::Base::kInduced2, const BoundsOptions& opts = {});

/// Bounds over words with omega(σ_{i+1}, σ_i) = 1 for consecutive labels.
BoundsResult markovian_bounds(const ArbitrarySystem& s, const Matrix& omega, std::size_t k, NormKind norm = {},
                              const BoundsOptions& opts = {});

/// Branch-and-bound bracket of width at most delta, unless `max_products` runs
/// out first (then `truncated` is set and the bracket is wider).
BoundsResult gripenberg(const ArbitrarySystem& s, double delta, NormKind norm = {},
                        std::uint64_t max_products = 1'000'000, int threads = 0);

/// Serial brute force kept as a test oracle and benchmark baseline: every
/// word is built from scratch and filtered, nothing is pruned or shared.
namespace reference {

BoundsResult jsr_bounds(const ArbitrarySystem& s, std::size_t k, NormKind norm = {});
BoundsResult cjsr_bounds(const ConstrainedSystem& c, std::size_t k, NormKind norm = {});
BoundsResult markovian_bounds(const ArbitrarySystem& s, const Matrix& omega, std::size_t k, NormKind norm = {});

}  // namespace reference

}  // namespace stpjsr
