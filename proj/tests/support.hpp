#pragma once

// Shared helpers for the test suites: deterministic RNG and small builders.

#include "bohr/expsum.hpp"
#include "bohr/frequency.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <random>

namespace bohr::test {

inline std::mt19937_64 rng(std::uint64_t seed = 0x5eedULL) {
  return std::mt19937_64(seed);
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline long uniform_int(std::mt19937_64& g, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(g);
}

// Random integral system: m generators with distinct irrational-ish values,
// n pairwise distinct integer coefficient vectors with entries in [-bound, bound].
inline SystemPtr random_integral_system(std::mt19937_64& g, int m, int n,
                                        long bound = 6) {
  // low dimensions cannot host many distinct vectors over a small entry box
  while (std::pow(2.0 * bound + 1.0, m) - 1.0 < 4.0 * n) bound *= 2;
  std::vector<Generator> gens;
  for (int k = 0; k < m; ++k) {
    double v = uniform(g, 0.3, 3.0) * (uniform(g, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    gens.push_back(Generator::make("g" + std::to_string(k), v, "test"));
  }
  std::vector<QVec> freqs;
  while (static_cast<int>(freqs.size()) < n) {
    QVec r(m);
    bool nonzero = false;
    for (int k = 0; k < m; ++k) {
      long e = uniform_int(g, -bound, bound);
      r[k] = Rational(e);
      nonzero = nonzero || e != 0;
    }
    if (!nonzero) continue;
    bool dup = false;
    for (const QVec& prev : freqs)
      if (prev == r) dup = true;
    if (!dup) freqs.push_back(std::move(r));
  }
  return std::make_shared<FrequencySystem>(
      FrequencySystem::define(std::move(gens), std::move(freqs),
                              Independence{true, "test fixture"}));
}

inline CVec random_coeffs(std::mt19937_64& g, Eigen::Index n, double max_mod = 2.0) {
  CVec c(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double mod = uniform(g, 0.1, max_mod);
    double ph = uniform(g, 0.0, num::two_pi);
    c[j] = std::polar(mod, ph);
  }
  return c;
}

inline Vec random_phases(std::mt19937_64& g, Eigen::Index m, double scale) {
  Vec x(m);
  for (Eigen::Index k = 0; k < m; ++k) x[k] = uniform(g, 0.0, scale);
  return x;
}

}  // namespace bohr::test
