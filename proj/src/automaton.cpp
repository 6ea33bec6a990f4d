#include "stpjsr/automaton.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "stpjsr/error.hpp"

namespace stpjsr {

Dfa::Dfa(std::size_t num_states, std::size_t num_labels, const std::vector<Edge>& edges)
    : states_(num_states), labels_(num_labels), table_(num_states * num_labels, 0) {
  if (num_states == 0 || num_labels == 0) {
    throw Error(ErrorCode::kInvalidArgument, "a DFA needs at least one state and one label");
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& [from, to, label] = edges[e];
    const auto where = "edge " + std::to_string(e) + " [" + std::to_string(from) + "," + std::to_string(to) +
                       "," + std::to_string(label) + "]";
    if (from == 0 || from > states_) throw Error(ErrorCode::kOutOfRange, where + ": 'from' outside [1," + std::to_string(states_) + "]");
    if (to == 0 || to > states_) throw Error(ErrorCode::kOutOfRange, where + ": 'to' outside [1," + std::to_string(states_) + "]");
    if (label == 0 || label > labels_) throw Error(ErrorCode::kOutOfRange, where + ": 'label' outside [1," + std::to_string(labels_) + "]");
    auto& slot = table_[(from - 1) * labels_ + (label - 1)];
    if (slot != 0) throw Error(ErrorCode::kNondeterministic, where + ": duplicate (from, label) pair");
    slot = to;
  }
  for (std::size_t s = 0; s < states_; ++s) {
    const auto first = table_.begin() + static_cast<std::ptrdiff_t>(s * labels_);
    if (std::all_of(first, first + static_cast<std::ptrdiff_t>(labels_), [](std::uint32_t t) { return t == 0; })) {
      throw Error(ErrorCode::kNotAlive, "state " + std::to_string(s + 1) + " has no outgoing transition");
    }
  }
}

Dfa Dfa::complete(std::size_t num_labels) {
  std::vector<Edge> edges;
  for (std::uint32_t j = 1; j <= num_labels; ++j) edges.push_back({1, 1, j});
  return {1, num_labels, edges};
}

std::vector<Edge> Dfa::edges() const {
  std::vector<Edge> out;
  for (std::uint32_t s = 1; s <= states_; ++s)
    for (std::uint32_t j = 1; j <= labels_; ++j)
      if (auto t = next(s, j); t != 0) out.push_back({s, t, j});
  std::sort(out.begin(), out.end());
  return out;
}

StructureMatrices structure_matrices(const Dfa& d) {
  const std::size_t l = d.num_states();
  const std::size_t m = d.num_labels();
  StructureMatrices out;
  std::vector<std::uint32_t> stacked;
  stacked.reserve(l * m);
  for (std::uint32_t j = 1; j <= m; ++j) {
    std::vector<std::uint32_t> cols(l);
    for (std::uint32_t t = 1; t <= l; ++t) cols[t - 1] = d.next(t, j);
    stacked.insert(stacked.end(), cols.begin(), cols.end());
    out.per_label.emplace_back(l, std::move(cols));
  }
  out.stacked = LogicalMatrix(l, std::move(stacked));
  return out;
}

Dfa dfa_from_structure(const std::vector<LogicalMatrix>& per_label) {
  if (per_label.empty()) throw Error(ErrorCode::kInvalidArgument, "no structure matrices");
  const std::size_t l = per_label.front().rows();
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < per_label.size(); ++j) {
    const auto& f = per_label[j];
    if (f.rows() != l || f.cols() != l) throw Error(ErrorCode::kDimension, "structure matrices must be l x l");
    for (std::size_t t = 0; t < l; ++t)
      if (f.target(t) != 0)
        edges.push_back({static_cast<std::uint32_t>(t + 1), f.target(t), static_cast<std::uint32_t>(j + 1)});
  }
  return {l, per_label.size(), edges};
}

namespace {

void check_word(const Dfa& d, const Word& w) {
  for (auto label : w.labels) {
    if (label == 0 || label > d.num_labels()) {
      throw Error(ErrorCode::kOutOfRange, "label " + std::to_string(label) + " outside the DFA alphabet [" +
                                              std::to_string(d.num_labels()) + "]");
    }
  }
}

// Live states after reading `label` from the set `live`.
void advance(const Dfa& d, const std::vector<char>& live, std::uint32_t label, std::vector<char>& out) {
  std::fill(out.begin(), out.end(), 0);
  for (std::uint32_t s = 1; s <= d.num_states(); ++s)
    if (live[s - 1])
      if (auto t = d.next(s, label); t != 0) out[t - 1] = 1;
}

bool any_live(const std::vector<char>& live) {
  return std::any_of(live.begin(), live.end(), [](char c) { return c != 0; });
}

}  // namespace

LogicalMatrix f_product(const Dfa& d, const Word& w) {
  if (w.empty()) throw Error(ErrorCode::kInvalidArgument, "f_product needs a nonempty word");
  check_word(d, w);
  const auto sm = structure_matrices(d);
  LogicalMatrix acc = sm.per_label[w.labels[0] - 1];
  for (std::size_t i = 1; i < w.size(); ++i) acc = compose(sm.per_label[w.labels[i] - 1], acc);
  return acc;
}

bool accepts(const Dfa& d, const Word& w) {
  check_word(d, w);
  std::vector<char> live(d.num_states(), 1);
  std::vector<char> next(d.num_states(), 0);
  for (auto label : w.labels) {
    advance(d, live, label, next);
    live.swap(next);
    if (!any_live(live)) return false;
  }
  return true;
}

bool for_each_accepted(const Dfa& d, std::size_t k, const std::function<bool(const Word&)>& visit) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "word length must be positive");
  const std::size_t l = d.num_states();
  const std::size_t m = d.num_labels();
  // live[depth] is the state set after reading the first `depth` labels.
  std::vector<std::vector<char>> live(k + 1, std::vector<char>(l, 0));
  std::fill(live[0].begin(), live[0].end(), 1);
  Word w(std::vector<std::uint32_t>(k, 1), m);
  std::vector<std::uint32_t> next_label(k + 1, 1);
  std::size_t depth = 0;
  while (true) {
    if (depth == k) {
      if (!visit(w)) return false;
      --depth;
      continue;
    }
    if (next_label[depth] > m) {
      if (depth == 0) return true;
      --depth;
      continue;
    }
    const auto label = next_label[depth]++;
    advance(d, live[depth], label, live[depth + 1]);
    if (!any_live(live[depth + 1])) continue;
    w.labels[depth] = label;
    ++depth;
    next_label[depth] = 1;
  }
}

AcceptedWords enumerate_accepted(const Dfa& d, std::size_t k, std::size_t limit) {
  AcceptedWords out;
  for_each_accepted(d, k, [&](const Word& w) {
    if (out.words.size() >= limit) {
      out.truncated = true;
      return false;
    }
    out.words.push_back(w);
    return true;
  });
  return out;
}

std::vector<std::uint64_t> count_accepted(const Dfa& d, std::size_t k) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const auto add = [](std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; };
  // Words grouped by their live state set; the number of distinct sets stays small in practice.
  std::map<std::vector<char>, std::uint64_t> level{{std::vector<char>(d.num_states(), 1), 1}};
  std::vector<std::uint64_t> counts;
  std::vector<char> next(d.num_states());
  for (std::size_t len = 1; len <= k; ++len) {
    std::map<std::vector<char>, std::uint64_t> grown;
    std::uint64_t total = 0;
    for (const auto& [live, count] : level) {
      for (std::uint32_t j = 1; j <= d.num_labels(); ++j) {
        advance(d, live, j, next);
        if (!any_live(next)) continue;
        auto& slot = grown[next];
        slot = add(slot, count);
        total = add(total, count);
      }
    }
    counts.push_back(total);
    level.swap(grown);
  }
  return counts;
}

void validate_omega(const Matrix& omega) {
  if (!omega.square() || omega.rows() == 0) throw Error(ErrorCode::kDimension, "omega must be a nonempty square matrix");
  for (double v : omega.data())
    if (v != 0.0 && v != 1.0) throw Error(ErrorCode::kInvalidArgument, "omega entries must be 0 or 1");
}

Dfa omega_to_dfa(const Matrix& omega) {
  validate_omega(omega);
  const std::size_t m = omega.rows();
  std::vector<Edge> edges;
  for (std::uint32_t j = 1; j <= m; ++j) {
    bool alive = false;
    for (std::uint32_t i = 1; i <= m; ++i) {
      if (omega(i - 1, j - 1) == 1.0) {
        edges.push_back({j, i, i});
        alive = true;
      }
    }
    if (!alive) throw Error(ErrorCode::kNotAlive, "omega column " + std::to_string(j) + " is all zero");
  }
  return {m, m, edges};
}

}  // namespace stpjsr
