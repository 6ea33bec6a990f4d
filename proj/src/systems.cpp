#include "stpjsr/systems.hpp"

#include <string>

#include "stpjsr/error.hpp"

namespace stpjsr {

ArbitrarySystem::ArbitrarySystem(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw Error(ErrorCode::kInvalidArgument, "a system needs at least one matrix");
  dim_ = matrices_.front().rows();
  if (dim_ == 0) throw Error(ErrorCode::kDimension, "system matrices must be nonempty");
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    if (matrices_[i].rows() != dim_ || matrices_[i].cols() != dim_) {
      throw Error(ErrorCode::kDimension, "matrix " + std::to_string(i + 1) + " is " +
                                             std::to_string(matrices_[i].rows()) + "x" +
                                             std::to_string(matrices_[i].cols()) + ", expected " +
                                             std::to_string(dim_) + "x" + std::to_string(dim_));
    }
  }
  h_ = Matrix(dim_, dim_ * matrices_.size());
  for (std::size_t b = 0; b < matrices_.size(); ++b)
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) h_(i, b * dim_ + j) = matrices_[b](i, j);
}

ConstrainedSystem::ConstrainedSystem(ArbitrarySystem system, Dfa dfa) : system(std::move(system)), dfa(std::move(dfa)) {
  if (this->dfa.num_labels() != this->system.arity()) {
    throw Error(ErrorCode::kDimension, "DFA has " + std::to_string(this->dfa.num_labels()) + " labels but the system has " +
                                           std::to_string(this->system.arity()) + " matrices");
  }
}

namespace {

void check_label(std::size_t arity, std::uint32_t label) {
  if (label == 0 || label > arity) {
    throw Error(ErrorCode::kOutOfRange, "label " + std::to_string(label) + " outside [" + std::to_string(arity) + "]");
  }
}

std::vector<double> apply(const Matrix& a, const std::vector<double>& x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::kDimension, "vector length does not match matrix");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace

std::vector<double> step(const ArbitrarySystem& s, std::uint32_t label, const std::vector<double>& x) {
  check_label(s.arity(), label);
  if (x.size() != s.dim()) throw Error(ErrorCode::kDimension, "state has the wrong dimension");
  const Matrix selected = stp(s.h(), DeltaVector(s.arity(), label).dense());
  const Matrix next = stp(selected, Matrix::column(x));
  return {next.data().begin(), next.data().end()};
}

Matrix product(const ArbitrarySystem& s, const Word& w) {
  if (w.empty()) throw Error(ErrorCode::kInvalidArgument, "product of an empty word");
  for (auto l : w.labels) check_label(s.arity(), l);
  Matrix acc = s.matrix(w.labels[0]);
  Matrix tmp;
  for (std::size_t i = 1; i < w.size(); ++i) {
    multiply_into(s.matrix(w.labels[i]), acc, tmp);
    std::swap(acc, tmp);
  }
  return acc;
}

Matrix h_tilde(const ArbitrarySystem& s, std::size_t k, std::size_t element_cap) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "h_tilde needs k >= 1");
  const std::size_t n = s.dim();
  const std::size_t m = s.arity();
  const auto blocks = checked_power(m, k);
  if (blocks > element_cap / (n * n)) {
    throw Error(ErrorCode::kCapExceeded, "H~_" + std::to_string(k) + " would have " + std::to_string(n) + "x" +
                                             std::to_string(n * blocks) + " entries, above the element cap");
  }
  Matrix acc = s.h();
  std::size_t reps = 1;
  for (std::size_t i = 1; i < k; ++i) {
    reps *= m;
    acc = stp(acc, kron(Matrix::identity(reps), s.h(), element_cap), element_cap);
  }
  return acc;
}

LiftedSystem stp_lift(const ConstrainedSystem& c) {
  const auto sm = structure_matrices(c.dfa);
  std::vector<Matrix> phis;
  phis.reserve(c.system.arity());
  for (std::size_t i = 0; i < c.system.arity(); ++i) phis.push_back(kron(sm.per_label[i].dense(), c.system.matrices()[i]));
  return {c, std::move(phis)};
}

std::vector<double> lifted_state(const DeltaVector& q, const std::vector<double>& x) {
  std::vector<double> xi(q.dim * x.size(), 0.0);
  if (q.is_zero()) return xi;
  for (std::size_t i = 0; i < x.size(); ++i) xi[(q.index - 1) * x.size() + i] = x[i];
  return xi;
}

std::vector<double> lifted_step(const LiftedSystem& lifted, std::uint32_t label, const std::vector<double>& xi) {
  check_label(lifted.phis.size(), label);
  return apply(lifted.phis[label - 1], xi);
}

TProductSystem t_product_lift(const ConstrainedSystem& c, std::size_t t, std::size_t word_limit) {
  if (t == 0) throw Error(ErrorCode::kInvalidArgument, "T-product needs t >= 1");
  const auto accepted = enumerate_accepted(c.dfa, t, word_limit);
  if (accepted.truncated) {
    throw Error(ErrorCode::kCapExceeded, "more than " + std::to_string(word_limit) + " accepted words of length " +
                                             std::to_string(t));
  }
  const auto sm = structure_matrices(c.dfa);
  std::vector<Matrix> matrices;
  std::vector<Edge> edges;
  std::vector<Word> label_words;
  for (const auto& w : accepted.words) {
    LogicalMatrix f = sm.per_label[w.labels[0] - 1];
    for (std::size_t i = 1; i < w.size(); ++i) f = compose(sm.per_label[w.labels[i] - 1], f);
    const auto label = static_cast<std::uint32_t>(label_words.size() + 1);
    for (std::size_t from = 0; from < f.cols(); ++from)
      if (f.target(from) != 0) edges.push_back({static_cast<std::uint32_t>(from + 1), f.target(from), label});
    matrices.push_back(product(c.system, w));
    label_words.push_back(w);
  }
  Dfa dfa(c.dfa.num_states(), label_words.size(), edges);
  return {ConstrainedSystem(ArbitrarySystem(std::move(matrices)), std::move(dfa)), std::move(label_words)};
}

ArbitrarySystem omega_lift(const ArbitrarySystem& s, const Matrix& omega) {
  validate_omega(omega);
  const std::size_t m = s.arity();
  if (omega.rows() != m) {
    throw Error(ErrorCode::kDimension, "omega is " + std::to_string(omega.rows()) + "x" + std::to_string(omega.cols()) +
                                           " but the system has " + std::to_string(m) + " matrices");
  }
  std::vector<Matrix> lifted;
  lifted.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix selector(m, m);
    for (std::size_t j = 0; j < m; ++j) selector(i, j) = omega(i, j);
    lifted.push_back(kron(selector, s.matrices()[i]));
  }
  return ArbitrarySystem(std::move(lifted));
}

std::vector<EdgeLiftTerm> edge_lift(const ConstrainedSystem& c) {
  const std::size_t l = c.dfa.num_states();
  std::vector<EdgeLiftTerm> out;
  for (const auto& e : c.dfa.edges()) {
    Matrix outer(l, l);
    outer(e.to - 1, e.from - 1) = 1.0;
    out.push_back({e, kron(outer, c.system.matrix(e.label))});
  }
  return out;
}

}  // namespace stpjsr
