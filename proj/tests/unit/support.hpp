#pragma once

#include <random>
#include <vector>

#include <doctest.h>

#include "hypdisk/core.hpp"

namespace testing {

using hypdisk::Complex;

inline std::vector<Complex> random_disk(int n, std::uint64_t seed, double radius = 0.99) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> out;
  for (int k = 0; k < n; ++k) out.push_back(std::polar(radius * std::sqrt(u(rng)), 2.0 * M_PI * u(rng)));
  return out;
}

inline std::vector<Complex> random_uhp(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x(-5.0, 5.0), logy(-4.0, 2.0);
  std::vector<Complex> out;
  for (int k = 0; k < n; ++k) out.push_back({x(rng), std::exp(logy(rng))});
  return out;
}

inline double dist(Complex a, Complex b) { return std::abs(a - b); }

}  // namespace testing
