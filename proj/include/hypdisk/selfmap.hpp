#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "hypdisk/core.hpp"
#include "hypdisk/geometry.hpp"
#include "hypdisk/sweep.hpp"

namespace hypdisk {

enum class Model { disk, upper_half_plane };

const char* to_string(Model m);

struct MapSpec;
using SpecPtr = std::shared_ptr<const MapSpec>;

struct BlaschkeZero {
  Complex position;
  int multiplicity = 1;
};

/// exp(2 pi i rotation_turns) * prod ((z - a_k) / (1 - conj(a_k) z))^{m_k}
struct BlaschkeSpec {
  double rotation_turns = 0.0;
  std::vector<BlaschkeZero> zeros;
};

struct MobiusSpec {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};
};

/// Coefficients in ascending degree.
struct PolynomialSpec {
  std::vector<Complex> coefficients;
};

/// outer o inner; both operands carry the composition's model.
struct CompositionSpec {
  SpecPtr inner;
  SpecPtr outer;
};

/// Frame change through the canonical Cayley map C. With model upper_half_plane the result is
/// C^{-1} o inner o C for a disk map inner; with model disk it is C o inner o C^{-1}.
struct CayleyConjugateSpec {
  SpecPtr inner;
};

struct MapSpec {
  Model model = Model::disk;
  std::variant<BlaschkeSpec, MobiusSpec, PolynomialSpec, CompositionSpec, CayleyConjugateSpec> body;
};

namespace detail {
class Node;
}

/// Evaluatable holomorphic self-map built from a MapSpec. Immutable; cheap to copy.
class SelfMap {
 public:
  explicit SelfMap(MapSpec spec);

  const MapSpec& spec() const { return *spec_; }
  const SpecPtr& spec_ptr() const { return spec_; }
  Model model() const { return spec_->model; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  std::pair<Complex, Complex> value_and_derivative(Complex z) const;

 private:
  SpecPtr spec_;
  std::shared_ptr<const detail::Node> node_;
};

Complex evaluate(const SelfMap& f, Complex z);
Complex derivative(const SelfMap& f, Complex z);

/// outer o inner. Throws ModelMismatch when the frames differ.
SelfMap compose(const SelfMap& outer, const SelfMap& inner);

/// g = C^{-1} o f o C for a disk map f.
SelfMap conjugate_to_halfplane(const SelfMap& f);
/// f = C o g o C^{-1} for a half-plane map g.
SelfMap conjugate_to_disk(const SelfMap& g);

/// Disk map z -> conj(alpha) f(alpha z): moves a boundary fixed point alpha of f to 1 without
/// changing its multiplier.
SelfMap rotate_to_one(const SelfMap& f, Complex alpha);

/// Half-plane conjugate with the boundary fixed point alpha of the disk map f placed at 0.
SelfMap halfplane_at(const SelfMap& f, Complex alpha);

/// F(z) = f(alpha z) / f(alpha); F(1) = 1 and F'(1) = alpha f'(alpha) / f(alpha).
SelfMap rescale_at(const SelfMap& f, Complex alpha);

struct ValidationReport {
  bool passed = false;
  bool structural = false;  // passed without sampling (Blaschke products, disk automorphisms)
  double max_modulus = 0.0;  // sup of |f| on the sampled circle (disk frame)
  Complex witness{};
  int samples = 0;
  std::string reason;
};

inline constexpr int default_validation_samples = 4096;

/// Certify the self-map property. Disk maps are checked on the boundary circle (maximum
/// principle); half-plane maps through their disk conjugate.
ValidationReport validate_selfmap(const SelfMap& f, int samples = default_validation_samples,
                                  Execution exec = Execution::parallel);

/// True when |f(z) - z| <= 1e-12 at 32 fixed pseudo-random points of the model domain.
bool is_identity(const SelfMap& f);

/// True when the map is a disk automorphism: a degree-one Blaschke product or a Mobius spec that
/// preserves the circle with its pole outside the closed disk.
bool is_disk_automorphism(const SelfMap& f);

namespace spec {

MapSpec blaschke(double rotation_turns, std::vector<BlaschkeZero> zeros, Model m = Model::disk);
MapSpec mobius(Complex a, Complex b, Complex c, Complex d, Model m = Model::disk);
MapSpec mobius(const MobiusTransform& t, Model m = Model::disk);
MapSpec polynomial(std::vector<Complex> coefficients, Model m = Model::disk);
MapSpec composition(MapSpec outer, MapSpec inner);
MapSpec cayley_conjugate(MapSpec inner);
MapSpec identity(Model m = Model::disk);

/// Blaschke product with the rotation chosen so that the product fixes 1.
MapSpec blaschke_fixing_one(const std::vector<BlaschkeZero>& zeros);

}  // namespace spec

/// Concrete maps used throughout the examples and tests.
namespace catalog {

/// ((z - 2/3) / (1 - 2z/3))^3: four boundary fixed points, all on the circle.
SelfMap cubed_blaschke();
/// z^3: interior fixed point 0, boundary fixed points +-1.
SelfMap cube();
SelfMap identity();
/// z -> e^{2 pi i turns} z.
SelfMap rotation(double turns);
/// (z + 1/2) / (1 + z/2): hyperbolic automorphism fixing +-1.
SelfMap hyperbolic_automorphism();
/// z - (z - 1)^3 / 4: tangent to the identity to second order at 1.
SelfMap cubic_tangent();
/// z (z + c) / (1 + c z).
SelfMap z_times_factor(double c);
/// Parabolic automorphism fixing 1: the half-plane translation w -> w + shift, moved to the disk.
SelfMap parabolic_automorphism(double shift);
/// phi_zeta as a Mobius spec.
SelfMap automorphism(Complex zeta);

}  // namespace catalog

}  // namespace hypdisk
