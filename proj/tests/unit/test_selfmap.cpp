#include "hypdisk/selfmap.hpp"

#include "support.hpp"

using namespace hypdisk;
using testing::dist;

namespace {

const Complex I(0.0, 1.0);

Complex example_raw(Complex z) { return std::pow((z - 2.0 / 3.0) / (1.0 - 2.0 * z / 3.0), 3); }

Complex central_difference(const SelfMap& f, Complex z, double h = 1e-5) { return (f(z + h) - f(z - h)) / (2.0 * h); }

}  // namespace

TEST_CASE("worked example values") {
  const SelfMap f = catalog::cubed_blaschke();
  CHECK(dist(f(-1.0), -1.0) < 1e-14);
  CHECK(dist(f(1.0), 1.0) < 1e-14);
  for (Complex z : testing::random_disk(50, 11)) CHECK(dist(f(z), example_raw(z)) < 1e-13);
}

TEST_CASE("worked example derivatives at the boundary fixed points") {
  const SelfMap f = catalog::cubed_blaschke();
  const Complex a((9.0 / 16.0), 5.0 * std::sqrt(7.0) / 16.0);
  CHECK(std::abs(f.derivative(-1.0) - 0.6) < 1e-10);
  CHECK(std::abs(f.derivative(1.0) - 15.0) < 1e-10);
  CHECK(std::abs(f.derivative(a) - 2.4) < 1e-10);
  CHECK(std::abs(f.derivative(std::conj(a)) - 2.4) < 1e-10);
}

TEST_CASE("simple evaluations") {
  CHECK(dist(catalog::cube()(0.5 * I), -0.125 * I) < 1e-16);
  const SelfMap id = catalog::identity();
  for (Complex z : testing::random_disk(10, 1)) {
    CHECK(id(z) == z);
    CHECK(id.derivative(z) == Complex(1.0));
  }
}

TEST_CASE("Blaschke derivative against finite differences") {
  const SelfMap b(spec::blaschke(0.1, {{Complex(0.3, 0.2), 2}, {Complex(-0.5, 0.1), 1}, {0.0, 1}}));
  for (Complex z : testing::random_disk(100, 21, 0.95)) {
    const Complex d = b.derivative(z);
    CHECK(dist(d, central_difference(b, z)) < 1e-7 * std::max(1.0, std::abs(d)));
  }
  // Derivative at a multiple zero goes through the product rule.
  CHECK(std::abs(b.derivative(Complex(0.3, 0.2))) < 1e-12);
  const SelfMap single(spec::blaschke(0.0, {{0.4, 1}}));
  CHECK(dist(single.derivative(0.4), 1.0 / (1.0 - 0.16)) < 1e-12);
}

TEST_CASE("Blaschke maps the circle to itself") {
  const SelfMap b(spec::blaschke(0.37, {{Complex(0.9, -0.1), 1}, {Complex(-0.2, 0.6), 3}}));
  for (int k = 0; k < 256; ++k) CHECK(std::abs(std::abs(b(std::polar(1.0, 2.0 * M_PI * k / 256))) - 1.0) < 1e-12);
}

TEST_CASE("Blaschke pole is reported") {
  const SelfMap b(spec::blaschke(0.0, {{0.5, 1}}));
  CHECK_THROWS_AS(b(2.0), PoleError);
}

TEST_CASE("composition") {
  const SelfMap phi(spec::mobius(DiskAutomorphism(Complex(0.2, 0.3)).as_mobius()));
  const SelfMap twice = compose(phi, phi);
  for (Complex z : testing::random_disk(50, 2)) CHECK(dist(twice(z), z) < 1e-12);

  // z^3 after the automorphism z -> (z - 2/3)/(1 - 2z/3) rebuilds the worked example.
  const SelfMap factor(spec::mobius(1.0, -2.0 / 3.0, -2.0 / 3.0, 1.0));
  const SelfMap rebuilt = compose(catalog::cube(), factor);
  for (Complex z : testing::random_disk(50, 3)) CHECK(dist(rebuilt(z), example_raw(z)) < 1e-13);

  const SelfMap f = catalog::cubed_blaschke();
  const SelfMap left = compose(catalog::identity(), f);
  for (Complex z : testing::random_disk(20, 4)) CHECK(dist(left(z), f(z)) < 1e-15);

  const SelfMap uhp(spec::mobius(1.0, I, 0.0, 1.0, Model::upper_half_plane));
  CHECK_THROWS_AS(compose(f, uhp), ModelMismatch);
}

TEST_CASE("composition derivative by chain rule") {
  const SelfMap g = compose(catalog::cubic_tangent(), catalog::cubed_blaschke());
  for (Complex z : testing::random_disk(30, 8, 0.9)) {
    const Complex d = g.derivative(z);
    CHECK(dist(d, central_difference(g, z)) < 1e-6 * std::max(1.0, std::abs(d)));
  }
}

TEST_CASE("half-plane conjugation") {
  const SelfMap id = conjugate_to_halfplane(catalog::identity());
  for (Complex w : testing::random_uhp(20, 5)) CHECK(dist(id(w), w) < 1e-12 * std::max(1.0, std::abs(w)));

  const SelfMap sq = conjugate_to_halfplane(SelfMap(spec::polynomial({0.0, 0.0, 1.0})));
  CHECK(sq.model() == Model::upper_half_plane);
  for (Complex w : testing::random_uhp(100, 6)) CHECK(sq(w).imag() > 0.0);

  // Independent oracle: C(z) = (z - i)/(z + i) and its inverse written out by hand.
  const SelfMap f = catalog::cubed_blaschke();
  const SelfMap g = conjugate_to_halfplane(f);
  for (Complex w : testing::random_uhp(20, 7)) {
    const Complex u = f((w - I) / (w + I));
    const Complex expect = I * (1.0 + u) / (1.0 - u);
    CHECK(dist(g(w), expect) < 1e-10 * std::max(1.0, std::abs(expect)));
  }
  const SelfMap back = conjugate_to_disk(g);
  for (Complex z : testing::random_disk(50, 8, 0.9)) CHECK(dist(back(z), f(z)) < 1e-12);

  // w + i seen in the disk fixes 1; a conjugated Mobius map has no pole there.
  const SelfMap shift = conjugate_to_disk(SelfMap(spec::mobius(1.0, I, 0.0, 1.0, Model::upper_half_plane)));
  CHECK(dist(shift(1.0), 1.0) < 1e-15);
  CHECK(std::abs(shift.derivative(1.0) - 1.0) < 1e-12);
  for (Complex z : testing::random_disk(20, 9, 0.9)) {
    const Complex w = I * (1.0 + z) / (1.0 - z) + I;
    CHECK(dist(shift(z), (w - I) / (w + I)) < 1e-12);
  }
}

TEST_CASE("frame changes at a boundary point") {
  const SelfMap f = catalog::cubed_blaschke();
  const Complex a(9.0 / 16.0, 5.0 * std::sqrt(7.0) / 16.0);
  const SelfMap r = rotate_to_one(f, a);
  CHECK(dist(r(1.0), 1.0) < 1e-12);
  CHECK(std::abs(r.derivative(1.0) - 2.4) < 1e-10);

  const SelfMap h = halfplane_at(f, 1.0);
  CHECK(h.model() == Model::upper_half_plane);
  CHECK(std::abs(h(1e-9 * I)) < 1e-6);
  CHECK(std::abs(h.derivative(1e-9 * I) - 15.0) < 1e-5);

  const SelfMap s = rescale_at(catalog::cube(), I);
  CHECK(dist(s(1.0), 1.0) < 1e-15);
}

TEST_CASE("self-map validation") {
  const ValidationReport tangent = validate_selfmap(catalog::cubic_tangent());
  CHECK(tangent.passed);
  CHECK(tangent.max_modulus <= 1.0 + 1e-9);

  const ValidationReport twice = validate_selfmap(SelfMap(spec::polynomial({0.0, 2.0})));
  CHECK_FALSE(twice.passed);
  CHECK(std::abs(twice.max_modulus - 2.0) < 1e-12);
  CHECK(std::abs(std::abs(twice.witness) - 1.0) < 1e-12);

  const ValidationReport cube = validate_selfmap(SelfMap(spec::polynomial({0.0, 0.0, 0.0, 1.0})));
  CHECK(cube.passed);
  CHECK(std::abs(cube.max_modulus - 1.0) < 1e-12);

  CHECK(validate_selfmap(catalog::cubed_blaschke()).structural);
  CHECK_FALSE(validate_selfmap(SelfMap(spec::mobius(1.0, 0.0, 0.0, 0.5))).passed);
  CHECK(validate_selfmap(SelfMap(spec::mobius(1.0, I, 0.0, 1.0, Model::upper_half_plane))).passed);
  CHECK_FALSE(validate_selfmap(SelfMap(spec::mobius(1.0, -I, 0.0, 1.0, Model::upper_half_plane))).passed);
}

TEST_CASE("identity and automorphism detection") {
  CHECK(is_identity(catalog::identity()));
  CHECK(is_identity(compose(catalog::automorphism(0.4), catalog::automorphism(0.4))));
  CHECK_FALSE(is_identity(catalog::rotation(0.25)));
  CHECK(is_disk_automorphism(catalog::hyperbolic_automorphism()));
  CHECK(is_disk_automorphism(catalog::rotation(0.1)));
  CHECK_FALSE(is_disk_automorphism(catalog::cube()));
}

TEST_CASE("parabolic automorphism fixes 1 with derivative 1") {
  const SelfMap p = catalog::parabolic_automorphism(0.7);
  CHECK(dist(p(1.0), 1.0) < 1e-12);
  CHECK(std::abs(p.derivative(1.0) - 1.0) < 1e-9);
  CHECK(is_disk_automorphism(p));
}
