#pragma once

// Shared map battery for the property and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "hypdisk/selfmap.hpp"

namespace battery {

using hypdisk::Complex;
using hypdisk::SelfMap;
namespace catalog = hypdisk::catalog;
namespace spec = hypdisk::spec;

struct Named {
  std::string name;
  SelfMap f;
  bool automorphism = false;
};

inline std::vector<Named> maps() {
  using hypdisk::Model;
  return {
      {"cubed-blaschke", catalog::cubed_blaschke()},
      {"cube", catalog::cube()},
      {"cubic-tangent", catalog::cubic_tangent()},
      {"hyperbolic-automorphism", catalog::hyperbolic_automorphism(), true},
      {"parabolic-automorphism", catalog::parabolic_automorphism(0.5), true},
      {"rotation", catalog::rotation(0.25), true},
      {"automorphism", catalog::automorphism(Complex(0.3, 0.4)), true},
      {"z-times-factor", catalog::z_times_factor(0.5)},
      {"blaschke-3", SelfMap(spec::blaschke(0.1, {{Complex(0.2, 0.5), 1}, {Complex(-0.6, -0.1), 1}, {Complex(0.1, -0.3), 1}}))},
      {"quadratic", SelfMap(spec::polynomial({0.0, 0.5, 0.5}))},
      {"tangent-after-example", hypdisk::compose(catalog::cubic_tangent(), catalog::cubed_blaschke())},
      {"shifted-halfplane", SelfMap(spec::cayley_conjugate(spec::mobius(1.0, Complex(0.0, 1.0), 0.0, 1.0, Model::upper_half_plane)))},
  };
}

/// Seeded self-maps with a boundary fixed point at 1 of multiplier 1: z - c (z - 1)^3, parabolic
/// automorphisms, and compositions of the two.
inline std::vector<SelfMap> tangent_at_one(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c(0.02, 0.25), shift(-2.0, 2.0);
  std::uniform_int_distribution<int> pick(0, 2);
  auto cubic = [&] {
    const double k = c(rng);
    // z - k (z - 1)^3 = k + (1 - 3k) z + 3k z^2 - k z^3
    return spec::polynomial({k, 1.0 - 3.0 * k, 3.0 * k, -k});
  };
  auto parabolic = [&] {
    double s = shift(rng);
    if (std::abs(s) < 0.05) s = 0.05;
    return catalog::parabolic_automorphism(s).spec();
  };
  std::vector<SelfMap> out;
  while (static_cast<int>(out.size()) < count) {
    switch (pick(rng)) {
      case 0: out.emplace_back(cubic()); break;
      case 1: out.emplace_back(parabolic()); break;
      default: out.emplace_back(spec::composition(parabolic(), cubic())); break;
    }
  }
  return out;
}

}  // namespace battery
