#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "stpjsr/automaton.hpp"
#include "stpjsr/error.hpp"
#include "stpjsr/logical.hpp"
#include "stpjsr/radius.hpp"
#include "stpjsr/spectra.hpp"
#include "stpjsr/systems.hpp"
#include "support.hpp"

using namespace stpjsr;
using testing::max_diff;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = jsr_bounds(testing::example1(), 7, NormKind::plain(NormKind::Base::kInduced2));
  const double t = seconds_since(t0);
  o.require(r.lower >= 1.1330 && r.lower <= 1.1350, "lower " + fmt(r.lower));
  o.require(r.upper >= 1.1570 && r.upper <= 1.1770, "upper " + fmt(r.upper));
  o.require(t < 5.0, "runtime " + fmt(t) + " s");
  if (o.ok) o.detail = "lower " + fmt(r.lower) + ", upper " + fmt(r.upper) + ", " + fmt(t) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto a = testing::example1().matrices();
  const double r2 = spectral_radius(a[1]);
  const double r4 = spectral_radius(a[3]);
  o.require(std::abs(r2 - 1.1340) <= 5e-4, "rho(A2) " + fmt(r2));
  o.require(std::abs(r4 - 1.0688) <= 5e-4, "rho(A4) " + fmt(r4));
  if (o.ok) o.detail = "rho(A2) " + fmt(r2) + ", rho(A4) " + fmt(r4);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto d = testing::example2();
  const auto sm = structure_matrices(d);
  o.require(sm.per_label.size() == 4, "label count");
  if (!o.ok) return o;
  o.require(sm.per_label[0] == LogicalMatrix(4, {3, 3, 3, 3}), "F1");
  o.require(sm.per_label[1] == LogicalMatrix(4, {0, 1, 1, 0}), "F2");
  o.require(sm.per_label[2] == LogicalMatrix(4, {2, 0, 2, 0}), "F3");
  o.require(sm.per_label[3] == LogicalMatrix(4, {0, 0, 4, 0}), "F4");
  const Word w({2, 3, 1}, 4);
  o.require(f_product(d, w) == LogicalMatrix(4, {0, 3, 3, 0}), "F-product of 231");
  o.require(word_to_index(w) == 10, "index of 231 is " + std::to_string(word_to_index(w)));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto lifted = stp_lift(testing::example3()).as_arbitrary();
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = gripenberg(lifted, 0.02, NormKind::block(NormKind::Base::kInduced2, 4), 1'000'000);
  const double t = seconds_since(t0);
  o.require(r.lower <= 0.9748172 && 0.9748172 <= r.upper, "bracket [" + fmt(r.lower) + ", " + fmt(r.upper) + "]");
  o.require(r.upper - r.lower <= 0.05, "width " + fmt(r.upper - r.lower));
  o.require(verdict(r) == Verdict::kStable, "verdict " + to_string(verdict(r)));
  o.require(t < 120.0, "runtime " + fmt(t) + " s");
  if (o.ok) o.detail = "[" + fmt(r.lower) + ", " + fmt(r.upper) + "], " + fmt(t) + " s";
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto compare = [&](const ConstrainedSystem& c, const std::string& name) {
    for (std::size_t k = 1; k <= 6; ++k) {
      const auto a = cjsr_bounds(c, k);
      const auto b = cjsr_bounds_via_lift(c, k);
      o.require(std::abs(a.lower - b.lower) <= 1e-9 && std::abs(a.upper - b.upper) <= 1e-9,
                name + " k=" + std::to_string(k) + ": " + fmt(a.lower) + "/" + fmt(b.lower) + ", " + fmt(a.upper) +
                    "/" + fmt(b.upper));
    }
  };
  compare(testing::example3(), "example");
  testing::Rng rng(501);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = rng.index(1, 3);
    const auto ell = rng.index(1, 4);
    const auto m = rng.index(1, 3);
    compare(ConstrainedSystem(rng.system(n, m), rng.dfa(ell, m)), "random #" + std::to_string(trial));
  }
  return o;
}

// Every partial transition function over ell states and m labels, in base ell+1.
Outcome criterion6() {
  Outcome o;
  std::uint64_t automata = 0;
  std::uint64_t words = 0;
  for (std::size_t ell = 1; ell <= 3; ++ell) {
    for (std::size_t m = 1; m <= 3; ++m) {
      std::vector<std::vector<Word>> by_length;
      for (std::size_t k = 1; k <= 5; ++k) by_length.push_back(testing::all_words(k, m));
      const std::size_t slots = ell * m;
      const std::uint64_t total = checked_power(ell + 1, slots);
      std::string failure;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : automata, words)
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<Edge> edges;
        std::uint64_t rest = code;
        for (std::size_t s = 0; s < slots; ++s) {
          const auto to = static_cast<std::uint32_t>(rest % (ell + 1));
          rest /= ell + 1;
          if (to != 0)
            edges.push_back({static_cast<std::uint32_t>(s / m + 1), to, static_cast<std::uint32_t>(s % m + 1)});
        }
        std::optional<Dfa> d;
        std::string problem;
        try {
          d.emplace(ell, m, edges);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNotAlive) problem = std::string("unexpected error: ") + e.what();
        }
        if (d) {
          ++automata;
          for (const auto& level : by_length) {
            for (const auto& w : level) {
              const bool walk = accepts(*d, w);
              if (walk == f_product(*d, w).is_zero()) problem = "disagreement on word " + to_string(w);
              if (walk != testing::naive_accepts(*d, w)) problem = "walk differs from the oracle on " + to_string(w);
              ++words;
            }
          }
        }
        if (!problem.empty()) {
#pragma omp critical
          if (failure.empty()) failure = problem;
        }
      }
      o.require(failure.empty(), failure);
      if (!o.ok) return o;
    }
  }
  o.detail = std::to_string(automata) + " automata, " + std::to_string(words) + " word checks";
  return o;
}

Outcome criterion7() {
  Outcome o;
  testing::Rng rng(701);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = rng.index(1, 3);
    const auto m = rng.index(1, 3);
    const auto s = rng.system(n, m);
    const auto omega = rng.omega(m);
    const auto lifted = omega_lift(s, omega);
    const ConstrainedSystem as_dfa(s, omega_to_dfa(omega));
    for (std::size_t k = 1; k <= 5; ++k) {
      const auto a = markovian_bounds(s, omega, k);
      const auto b = cjsr_bounds(as_dfa, k);
      const auto c = jsr_bounds(lifted, k, NormKind::block(NormKind::Base::kInduced2, m));
      const std::string where = "instance " + std::to_string(trial) + " k=" + std::to_string(k);
      o.require(std::abs(a.upper - b.upper) <= 1e-9 && std::abs(a.upper - c.upper) <= 1e-9, where + " upper");
      o.require(std::abs(a.lower - b.lower) <= 1e-9 && std::abs(a.lower - c.lower) <= 1e-9, where + " lower");
    }
  }
  auto edge_sums = [&](const ConstrainedSystem& c) {
    const auto phis = stp_lift(c).phis;
    std::vector<Matrix> sums;
    for (const auto& p : phis) sums.emplace_back(p.rows(), p.cols());
    for (const auto& term : edge_lift(c)) sums[term.edge.label - 1] = sums[term.edge.label - 1] + term.matrix;
    for (std::size_t i = 0; i < phis.size(); ++i) o.require(sums[i] == phis[i], "edge sum for label " + std::to_string(i + 1));
  };
  edge_sums(testing::example3());
  for (int trial = 0; trial < 20; ++trial) edge_sums(ConstrainedSystem(rng.system(rng.index(1, 3), 3), rng.dfa(rng.index(1, 4), 3)));
  return o;
}

Outcome criterion8() {
  Outcome o;
  testing::Rng rng(801);
  auto dim = [&] { return rng.index(1, 4); };
  for (int trial = 0; trial < 200; ++trial) {
    // x ⋉ A = (I_n ⊗ A) ⋉ x
    const auto n = dim();
    const auto x = rng.matrix(n, 1);
    const auto a = rng.matrix(dim(), dim());
    o.require(max_diff(stp(x, a), stp(kron(Matrix::identity(n), a), x)) <= 1e-12, "x A = (I (x) A) x");
    // x ⋉ x = Φ_n x for a logical vector x
    const auto dx = testing::delta(n, rng.index(1, n));
    o.require(max_diff(stp(dx, dx), power_reducing_matrix(n).dense() * dx) <= 1e-12, "x x = Phi x");
    // W[n,m] ⋉ x ⋉ y = y ⋉ x
    const auto m = dim();
    const auto y = rng.matrix(m, 1);
    o.require(max_diff(stp(stp(swap_matrix(n, m).dense(), x), y), stp(y, x)) <= 1e-12, "W x y = y x");
    // associativity
    const auto p = rng.matrix(dim(), dim());
    const auto q = rng.matrix(dim(), dim());
    const auto r = rng.matrix(dim(), dim());
    o.require(max_diff(stp(stp(p, q), r), stp(p, stp(q, r))) <= 1e-12, "associativity");
    // (A ⊗ B)(C ⊗ D) = AC ⊗ BD
    const auto i = dim(), j = dim(), k = dim(), l = dim();
    const auto ma = rng.matrix(i, j), mc = rng.matrix(j, dim());
    const auto mb = rng.matrix(k, l), md = rng.matrix(l, dim());
    o.require(max_diff(kron(ma, mb) * kron(mc, md), kron(ma * mc, mb * md)) <= 1e-12, "mixed product");
    // eigenvalues of A ⊗ B are the pairwise products
    const auto da = dim(), db = dim();
    const auto sa = rng.matrix(da, da);
    const auto sb = rng.matrix(db, db);
    const auto ea = eigenvalues(sa).eigenvalues;
    const auto eb = eigenvalues(sb).eigenvalues;
    std::vector<std::complex<double>> products;
    for (const auto& u : ea)
      for (const auto& v : eb) products.push_back(u * v);
    const auto ek = eigenvalues(kron(sa, sb)).eigenvalues;
    std::vector<double> got, want;
    for (const auto& z : ek) got.push_back(std::abs(z));
    for (const auto& z : products) want.push_back(std::abs(z));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    bool close = got.size() == want.size();
    for (std::size_t t = 0; close && t < got.size(); ++t) close = std::abs(got[t] - want[t]) <= 1e-9;
    o.require(close, "kron eigenvalue moduli, trial " + std::to_string(trial));
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  testing::Rng rng(901);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = rng.system(rng.index(1, 3), rng.index(1, 3));
    double prev_lower = -1.0;
    double prev_upper = INFINITY;
    for (std::size_t k = 1; k <= 6; ++k) {
      const auto r = jsr_bounds(s, k);
      const std::string where = "system " + std::to_string(trial) + " k=" + std::to_string(k);
      o.require(r.lower >= prev_lower, where + " lower decreased");
      o.require(r.upper <= prev_upper, where + " upper increased");
      o.require(r.lower <= r.upper, where + " lower above upper");
      prev_lower = r.lower;
      prev_upper = r.upper;
    }
  }
  return o;
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  const std::string cmd = std::string(STPJSR_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome criterion10() {
  Outcome o;
  const std::filesystem::path dir = STPJSR_FIXTURES;
  int compared = 0;
  for (const auto* name : {"example1.json", "example2.json", "example3.json", "markov_example.json"}) {
    const auto file = (dir / name).string();
    for (const std::string cmd : {"bounds " + file + " --k 6", "bounds " + file + " --k 6 --output json",
                                  "gripenberg " + file + " --delta 0.02", "gripenberg " + file + " --delta 0.02 --output json"}) {
      const auto one = run_cli(cmd + " --threads 1");
      const auto eight = run_cli(cmd + " --threads 8");
      o.require(one.code == eight.code && one.out == eight.out, "output differs: " + cmd);
      o.require(!one.out.empty(), "no output: " + cmd);
      ++compared;
    }
  }
  if (o.ok) o.detail = std::to_string(compared) + " command pairs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"example set bounds at k=7", criterion1},
      {"spectral radii of A2 and A4", criterion2},
      {"example automaton structure matrices, F-product and word index", criterion3},
      {"branch and bound on the lifted constrained example", criterion4},
      {"direct and lifted constrained bounds agree", criterion5},
      {"graph walk agrees with F-product nonzeroness on all small automata", criterion6},
      {"markovian, automaton and lifted bounds agree; edge lift sums", criterion7},
      {"semi-tensor product identities", criterion8},
      {"bounds are monotone and ordered", criterion9},
      {"CLI output independent of thread count", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << i + 1 << " " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
