#include "stpjsr/word.hpp"

#include <charconv>
#include <limits>

#include "stpjsr/error.hpp"

namespace stpjsr {

Word::Word(std::vector<std::uint32_t> labels, std::size_t arity) : labels(std::move(labels)), arity(arity) {
  if (arity == 0) throw Error(ErrorCode::kInvalidArgument, "alphabet size must be positive");
  for (auto l : this->labels) {
    if (l == 0 || l > arity) {
      throw Error(ErrorCode::kOutOfRange,
                  "label " + std::to_string(l) + " outside alphabet [" + std::to_string(arity) + "]");
    }
  }
}

std::string to_string(const Word& w) {
  const bool compact = w.arity < 10;
  std::string out;
  for (std::size_t i = 0; i < w.labels.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += std::to_string(w.labels[i]);
  }
  return out;
}

Word parse_word(std::string_view text, std::size_t arity) {
  if (text.empty()) throw Error(ErrorCode::kParse, "empty word");
  std::vector<std::uint32_t> labels;
  const bool separated = text.find(',') != std::string_view::npos;
  if (!separated) {
    for (char c : text) {
      if (c < '0' || c > '9') throw Error(ErrorCode::kParse, "invalid character in word: '" + std::string(1, c) + "'");
      labels.push_back(static_cast<std::uint32_t>(c - '0'));
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto piece = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
      std::uint32_t value = 0;
      const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
      if (ec != std::errc{} || ptr != piece.data() + piece.size() || piece.empty()) {
        throw Error(ErrorCode::kParse, "invalid label '" + std::string(piece) + "'");
      }
      labels.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  return {std::move(labels), arity};
}

std::uint64_t checked_power(std::size_t m, std::size_t k) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (p > std::numeric_limits<std::uint64_t>::max() / m) throw Error(ErrorCode::kCapExceeded, "m^k overflows");
    p *= m;
  }
  return p;
}

std::uint64_t word_to_index(const Word& w) {
  if (w.empty()) throw Error(ErrorCode::kInvalidArgument, "word_to_index needs a nonempty word");
  checked_power(w.arity, w.size());
  // Horner form of 1 + Σ (j_{k-i} - 1) m^{k-i}: the latest label is the most significant digit.
  std::uint64_t tau = 0;
  for (std::size_t i = w.size(); i-- > 0;) tau = tau * w.arity + (w.labels[i] - 1);
  return tau + 1;
}

Word index_to_word(std::uint64_t tau, std::size_t k, std::size_t m) {
  if (k == 0 || m == 0) throw Error(ErrorCode::kInvalidArgument, "index_to_word needs k, m >= 1");
  const auto total = checked_power(m, k);
  if (tau == 0 || tau > total) {
    throw Error(ErrorCode::kOutOfRange, "index " + std::to_string(tau) + " outside [" + std::to_string(total) + "]");
  }
  std::vector<std::uint32_t> labels(k);
  std::uint64_t rest = tau - 1;
  for (std::size_t i = 0; i < k; ++i) {
    labels[i] = static_cast<std::uint32_t>(rest % m) + 1;
    rest /= m;
  }
  return {std::move(labels), m};
}

}  // namespace stpjsr
