// Serial reference vs the parallel word-tree kernel.
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>

#include "stpjsr/automaton.hpp"
#include "stpjsr/radius.hpp"
#include "stpjsr/systems.hpp"

using namespace stpjsr;

namespace {

ArbitrarySystem random_system(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < m; ++i) {
    Matrix a(n, n);
    for (auto& v : a.data()) v = u(gen);
    mats.push_back(std::move(a));
  }
  return ArbitrarySystem(std::move(mats));
}

double time_it(const std::function<BoundsResult()>& f, BoundsResult& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& name, const std::function<BoundsResult()>& ref,
         const std::function<BoundsResult(int)>& kernel) {
  BoundsResult r0, r1, rn;
  const int max_threads = omp_get_max_threads();
  const double t0 = time_it(ref, r0);
  const double t1 = time_it([&] { return kernel(1); }, r1);
  const double tn = time_it([&] { return kernel(max_threads); }, rn);
  const bool same = r0.lower == r1.lower && r0.upper == r1.upper && r1.lower == rn.lower && r1.upper == rn.upper;
  std::cout << std::left << std::setw(28) << name << std::right << std::fixed << std::setprecision(3) << std::setw(10)
            << t0 << std::setw(10) << t1 << std::setw(10) << tn << "  (" << max_threads << " threads)  "
            << (same ? "equal" : "MISMATCH") << "\n";
  if (!same) std::exit(1);
}

}  // namespace

int main() {
  std::cout << std::left << std::setw(28) << "case" << std::right << std::setw(10) << "reference" << std::setw(10)
            << "kernel-1" << std::setw(10) << "kernel-N" << "\n";

  const auto s4 = random_system(3, 4, 1);
  for (std::size_t k : {8, 10}) {
    row("jsr n=3 m=4 k=" + std::to_string(k), [&] { return reference::jsr_bounds(s4, k); },
        [&](int t) { return jsr_bounds(s4, k, {}, {.threads = t}); });
  }

  const auto s2 = random_system(4, 2, 2);
  row("jsr n=4 m=2 k=16", [&] { return reference::jsr_bounds(s2, 16); },
      [&](int t) { return jsr_bounds(s2, 16, {}, {.threads = t}); });

  Matrix omega(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) omega(i, j) = (i + j) % 3 == 0 ? 0.0 : 1.0;
  const ConstrainedSystem c(s4, omega_to_dfa(omega));
  row("cjsr n=3 m=4 k=10", [&] { return reference::cjsr_bounds(c, 10); },
      [&](int t) { return cjsr_bounds(c, 10, {}, {.threads = t}); });
  row("markov n=3 m=4 k=10", [&] { return reference::markovian_bounds(s4, omega, 10); },
      [&](int t) { return markovian_bounds(s4, omega, 10, {}, {.threads = t}); });
  return 0;
}
