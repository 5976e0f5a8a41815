#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

// Fixed-seed generators for property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
};

// Runs body(gen, case_index) for n cases; the seed is derived from the case
// index so a failing case can be replayed on its own.
inline void for_all(int n, std::uint64_t seed, const std::function<void(Gen&, int)>& body) {
  for (int i = 0; i < n; ++i) {
    Gen g(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    body(g, i);
  }
}
