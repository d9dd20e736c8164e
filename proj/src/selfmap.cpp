#include "hypdisk/selfmap.hpp"

#include <limits>
#include <optional>
#include <random>

namespace hypdisk {

const char* to_string(Model m) { return m == Model::disk ? "disk" : "upper_half_plane"; }

namespace detail {

class Node {
 public:
  virtual ~Node() = default;
  virtual Complex eval(Complex z) const = 0;
  virtual std::pair<Complex, Complex> eval_d(Complex z) const = 0;
};

namespace {

Complex ipow(Complex base, int n) {
  Complex r = 1.0;
  for (; n > 0; n >>= 1, base *= base)
    if (n & 1) r *= base;
  return r;
}

class BlaschkeNode final : public Node {
 public:
  explicit BlaschkeNode(const BlaschkeSpec& s) : rotation_(std::polar(1.0, 2.0 * M_PI * s.rotation_turns)) {
    if (!std::isfinite(s.rotation_turns)) throw DomainError("blaschke rotation must be finite");
    for (const auto& z : s.zeros) {
      require_finite(z.position, "blaschke zero");
      if (std::abs(z.position) >= 1.0) throw DomainError("blaschke zero outside the open disk: " + format_complex(z.position));
      if (z.multiplicity <= 0) throw DomainError("blaschke multiplicity must be positive");
      zeros_.push_back({z.position, std::conj(z.position), z.multiplicity});
    }
  }

  Complex eval(Complex z) const override {
    Complex prod = rotation_;
    for (const auto& k : zeros_) prod *= ipow(factor(k, z), k.m);
    return prod;
  }

  std::pair<Complex, Complex> eval_d(Complex z) const override {
    const Complex f = eval(z);
    if (std::abs(f) >= 1e-12) {
      Complex logd = 0.0;
      for (const auto& k : zeros_) logd += double(k.m) * (1.0 / (z - k.a) + k.abar / (1.0 - k.abar * z));
      return {f, f * logd};
    }
    // Near a zero the logarithmic derivative is 0/0; expand the product rule instead.
    Complex d = 0.0;
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
      const auto& k = zeros_[i];
      const Complex den = 1.0 - k.abar * z;
      Complex term = double(k.m) * ipow(factor(k, z), k.m - 1) * (1.0 - std::norm(k.a)) / (den * den);
      for (std::size_t j = 0; j < zeros_.size(); ++j)
        if (j != i) term *= ipow(factor(zeros_[j], z), zeros_[j].m);
      d += term;
    }
    return {f, rotation_ * d};
  }

 private:
  struct Zero {
    Complex a, abar;
    int m;
  };

  static Complex factor(const Zero& k, Complex z) {
    const Complex den = 1.0 - k.abar * z;
    if (den == 0.0) throw PoleError("blaschke factor evaluated at its pole " + format_complex(z));
    return (z - k.a) / den;
  }

  Complex rotation_;
  std::vector<Zero> zeros_;
};

class MobiusNode final : public Node {
 public:
  explicit MobiusNode(const MobiusSpec& s) : t_(s.a, s.b, s.c, s.d) {}
  explicit MobiusNode(const MobiusTransform& t) : t_(t) {}
  Complex eval(Complex z) const override { return t_(z); }
  std::pair<Complex, Complex> eval_d(Complex z) const override { return {t_(z), t_.derivative(z)}; }

 private:
  MobiusTransform t_;
};

class PolynomialNode final : public Node {
 public:
  explicit PolynomialNode(const PolynomialSpec& s) : c_(s.coefficients) {
    if (c_.empty()) throw DomainError("polynomial needs at least one coefficient");
    for (Complex v : c_) require_finite(v, "polynomial coefficient");
  }

  Complex eval(Complex z) const override {
    Complex p = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) p = p * z + *it;
    return p;
  }

  std::pair<Complex, Complex> eval_d(Complex z) const override {
    Complex p = 0.0, dp = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      dp = dp * z + p;
      p = p * z + *it;
    }
    return {p, dp};
  }

 private:
  std::vector<Complex> c_;
};

class CompositionNode final : public Node {
 public:
  CompositionNode(std::shared_ptr<const Node> outer, std::shared_ptr<const Node> inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}

  Complex eval(Complex z) const override { return outer_->eval(inner_->eval(z)); }

  std::pair<Complex, Complex> eval_d(Complex z) const override {
    const auto [w, dw] = inner_->eval_d(z);
    const auto [v, dv] = outer_->eval_d(w);
    return {v, dv * dw};
  }

 private:
  std::shared_ptr<const Node> outer_, inner_;
};

// Composite mobius o inner o mobius with the two frame-change transforms.
class ConjugateNode final : public Node {
 public:
  ConjugateNode(std::shared_ptr<const Node> inner, MobiusTransform enter, MobiusTransform leave)
      : inner_(std::move(inner)), enter_(enter), leave_(leave) {}

  Complex eval(Complex z) const override { return leave_(inner_->eval(enter_(z))); }

  std::pair<Complex, Complex> eval_d(Complex z) const override {
    const Complex w = enter_(z);
    const auto [v, dv] = inner_->eval_d(w);
    return {leave_(v), leave_.derivative(v) * dv * enter_.derivative(z)};
  }

 private:
  std::shared_ptr<const Node> inner_;
  MobiusTransform enter_, leave_;
};

std::shared_ptr<const Node> build(const MapSpec& s) {
  struct Visitor {
    Model model;
    std::shared_ptr<const Node> operator()(const BlaschkeSpec& b) const {
      if (model != Model::disk) throw ModelMismatch("blaschke products are disk maps");
      return std::make_shared<BlaschkeNode>(b);
    }
    std::shared_ptr<const Node> operator()(const MobiusSpec& m) const { return std::make_shared<MobiusNode>(m); }
    std::shared_ptr<const Node> operator()(const PolynomialSpec& p) const {
      return std::make_shared<PolynomialNode>(p);
    }
    std::shared_ptr<const Node> operator()(const CompositionSpec& c) const {
      if (!c.inner || !c.outer) throw DomainError("composition needs both operands");
      if (c.inner->model != model || c.outer->model != model)
        throw ModelMismatch("composition operands must share the model of the composition");
      return std::make_shared<CompositionNode>(build(*c.outer), build(*c.inner));
    }
    std::shared_ptr<const Node> operator()(const CayleyConjugateSpec& c) const {
      if (!c.inner) throw DomainError("cayley_conjugate needs an inner map");
      if (c.inner->model == model) throw ModelMismatch("cayley_conjugate inner map must live in the other model");
      const CayleyMap cayley = canonical_cayley();
      const bool to_halfplane = model == Model::upper_half_plane;
      const MobiusTransform enter = to_halfplane ? cayley.as_mobius() : cayley.inverse_mobius();
      const MobiusTransform leave = to_halfplane ? cayley.inverse_mobius() : cayley.as_mobius();
      // A conjugated Mobius map is again Mobius; fusing avoids the spurious pole of the frame change.
      if (const auto* m = std::get_if<MobiusSpec>(&c.inner->body))
        return std::make_shared<MobiusNode>(leave.after(MobiusTransform(m->a, m->b, m->c, m->d)).after(enter));
      return std::make_shared<ConjugateNode>(build(*c.inner), enter, leave);
    }
  };
  return std::visit(Visitor{s.model}, s.body);
}

}  // namespace
}  // namespace detail

SelfMap::SelfMap(MapSpec spec)
    : spec_(std::make_shared<const MapSpec>(std::move(spec))), node_(detail::build(*spec_)) {}

Complex SelfMap::operator()(Complex z) const { return node_->eval(z); }
Complex SelfMap::derivative(Complex z) const { return node_->eval_d(z).second; }
std::pair<Complex, Complex> SelfMap::value_and_derivative(Complex z) const { return node_->eval_d(z); }

Complex evaluate(const SelfMap& f, Complex z) { return f(z); }
Complex derivative(const SelfMap& f, Complex z) { return f.derivative(z); }

SelfMap compose(const SelfMap& outer, const SelfMap& inner) {
  if (outer.model() != inner.model()) throw ModelMismatch("compose: operands live in different models");
  MapSpec s;
  s.model = outer.model();
  s.body = CompositionSpec{inner.spec_ptr(), outer.spec_ptr()};
  return SelfMap(std::move(s));
}

SelfMap conjugate_to_halfplane(const SelfMap& f) {
  if (f.model() != Model::disk) throw ModelMismatch("conjugate_to_halfplane expects a disk map");
  MapSpec s;
  s.model = Model::upper_half_plane;
  s.body = CayleyConjugateSpec{f.spec_ptr()};
  return SelfMap(std::move(s));
}

SelfMap conjugate_to_disk(const SelfMap& g) {
  if (g.model() != Model::upper_half_plane) throw ModelMismatch("conjugate_to_disk expects a half-plane map");
  MapSpec s;
  s.model = Model::disk;
  s.body = CayleyConjugateSpec{g.spec_ptr()};
  return SelfMap(std::move(s));
}

namespace {

Complex unit(Complex alpha, const char* what) {
  require_finite(alpha, what);
  if (!on_unit_circle(alpha)) throw DomainError(std::string(what) + " must lie on the unit circle");
  return alpha / std::abs(alpha);
}

SelfMap scale_conjugate(const SelfMap& f, Complex inner_scale, Complex outer_scale) {
  if (f.model() != Model::disk) throw ModelMismatch("expected a disk map");
  const SelfMap in(spec::mobius(inner_scale, 0.0, 0.0, 1.0));
  const SelfMap out(spec::mobius(outer_scale, 0.0, 0.0, 1.0));
  return compose(out, compose(f, in));
}

}  // namespace

SelfMap rotate_to_one(const SelfMap& f, Complex alpha) {
  const Complex a = unit(alpha, "rotation target");
  return scale_conjugate(f, a, std::conj(a));
}

SelfMap halfplane_at(const SelfMap& f, Complex alpha) {
  const Complex a = unit(alpha, "boundary point");
  return conjugate_to_halfplane(scale_conjugate(f, -a, -std::conj(a)));
}

SelfMap rescale_at(const SelfMap& f, Complex alpha) {
  require_finite(alpha, "rescaling point");
  const Complex fa = f(alpha);
  if (fa == 0.0) throw DomainError("rescale_at: f vanishes at the rescaling point");
  return scale_conjugate(f, alpha, 1.0 / fa);
}

bool is_identity(const SelfMap& f) {
  std::mt19937_64 rng(0x1d3a7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CayleyMap cayley = canonical_cayley();
  for (int k = 0; k < 32; ++k) {
    Complex z = std::polar(0.9 * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
    if (f.model() == Model::upper_half_plane) z = cayley.inverse(z);
    Complex fz;
    try {
      fz = f(z);
    } catch (const std::exception&) {
      return false;
    }
    if (!is_finite(fz) || std::abs(fz - z) > 1e-12 * std::max(1.0, std::abs(z))) return false;
  }
  return true;
}

bool is_disk_automorphism(const SelfMap& f) {
  const MapSpec& s = f.spec();
  if (s.model != Model::disk) return false;
  if (const auto* b = std::get_if<BlaschkeSpec>(&s.body)) {
    int degree = 0;
    for (const auto& z : b->zeros) degree += z.multiplicity;
    return degree <= 1;
  }
  if (const auto* m = std::get_if<MobiusSpec>(&s.body)) {
    const MobiusTransform t(m->a, m->b, m->c, m->d);
    if (t.c() != 0.0 && std::abs(t.d() / t.c()) <= 1.0 + tol::boundary) return false;
    if (std::abs(t(0.0)) >= 1.0) return false;
    for (int k = 0; k < 3; ++k)
      if (std::abs(std::abs(t(std::polar(1.0, 2.0 * M_PI * k / 3.0))) - 1.0) > 1e-12) return false;
    return true;
  }
  if (const auto* c = std::get_if<CompositionSpec>(&s.body))
    return is_disk_automorphism(SelfMap(*c->inner)) && is_disk_automorphism(SelfMap(*c->outer));
  return false;
}

namespace {

ValidationReport fail(Complex witness, double modulus, std::string reason) {
  ValidationReport r;
  r.passed = false;
  r.max_modulus = modulus;
  r.witness = witness;
  r.reason = std::move(reason);
  return r;
}

// Pole of a Mobius spec that lands inside the model domain, if any.
std::optional<Complex> interior_pole(const MobiusSpec& m, Model model) {
  if (m.c == 0.0) return std::nullopt;
  const Complex pole = -m.d / m.c;
  const bool inside = model == Model::disk ? std::abs(pole) <= 1.0 + tol::boundary : pole.imag() > 0.0;
  if (inside) return pole;
  return std::nullopt;
}

}  // namespace

ValidationReport validate_selfmap(const SelfMap& f, int samples, Execution exec) {
  if (samples < 1) throw DomainError("validate_selfmap needs at least one sample");
  const MapSpec& s = f.spec();

  if (s.model == Model::disk && std::holds_alternative<BlaschkeSpec>(s.body)) {
    ValidationReport r;
    r.passed = r.structural = true;
    r.max_modulus = 1.0;
    r.witness = 1.0;
    r.reason = "finite Blaschke product";
    return r;
  }
  if (const auto* m = std::get_if<MobiusSpec>(&s.body)) {
    if (auto pole = interior_pole(*m, s.model))
      return fail(*pole, std::numeric_limits<double>::infinity(), "pole inside the model domain");
    if (is_disk_automorphism(f)) {
      ValidationReport r;
      r.passed = r.structural = true;
      r.max_modulus = 1.0;
      r.witness = 1.0;
      r.reason = "disk automorphism";
      return r;
    }
  }
  if (const auto* c = std::get_if<CompositionSpec>(&s.body)) {
    for (const SpecPtr& part : {c->inner, c->outer}) {
      ValidationReport sub = validate_selfmap(SelfMap(*part), samples, exec);
      if (!sub.passed) {
        sub.reason = "composition operand: " + sub.reason;
        return sub;
      }
    }
  }
  if (const auto* c = std::get_if<CayleyConjugateSpec>(&s.body)) {
    ValidationReport sub = validate_selfmap(SelfMap(*c->inner), samples, exec);
    if (!sub.passed) {
      sub.reason = "conjugated map: " + sub.reason;
      return sub;
    }
  }

  // Boundary sweep in the disk frame. Half-plane maps are read through C o g o C^{-1}; their
  // sample grid is offset by half a step so that w = 1 (infinity) is never evaluated.
  const CayleyMap cayley = canonical_cayley();
  const bool disk = s.model == Model::disk;
  const double offset = disk ? 0.0 : 0.5;
  auto boundary_point = [&](std::size_t k) { return std::polar(1.0, 2.0 * M_PI * (double(k) + offset) / samples); };
  auto disk_value = [&](Complex w) { return disk ? f(w) : cayley(f(cayley.inverse(w))); };

  const Extremum worst = max_over(
      static_cast<std::size_t>(samples), [&](std::size_t k) { return std::abs(disk_value(boundary_point(k))); }, exec);

  // Interior sweep catches poles that the boundary values alone cannot see.
  constexpr std::size_t interior = 256;
  auto interior_point = [](std::size_t k) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    return std::polar(0.99 * std::sqrt((k + 0.5) / interior), golden * double(k));
  };
  const Extremum inner = max_over(
      interior, [&](std::size_t k) { return std::abs(disk_value(interior_point(k))); }, exec);

  ValidationReport r;
  r.samples = samples;
  const bool boundary_worst = !(inner.value > worst.value) && !std::isnan(inner.value);
  const Complex w = boundary_worst ? boundary_point(worst.index) : interior_point(inner.index);
  r.max_modulus = boundary_worst ? worst.value : inner.value;
  r.witness = disk ? w : cayley.inverse(w);
  r.passed = std::isfinite(r.max_modulus) && worst.value <= 1.0 + tol::boundary && inner.value <= 1.0 + tol::boundary;
  r.reason = r.passed ? "boundary modulus within tolerance" : "map leaves the model domain";
  return r;
}

namespace spec {

MapSpec blaschke(double rotation_turns, std::vector<BlaschkeZero> zeros, Model m) {
  return {m, BlaschkeSpec{rotation_turns, std::move(zeros)}};
}

MapSpec mobius(Complex a, Complex b, Complex c, Complex d, Model m) { return {m, MobiusSpec{a, b, c, d}}; }

MapSpec mobius(const MobiusTransform& t, Model m) { return mobius(t.a(), t.b(), t.c(), t.d(), m); }

MapSpec polynomial(std::vector<Complex> coefficients, Model m) { return {m, PolynomialSpec{std::move(coefficients)}}; }

MapSpec composition(MapSpec outer, MapSpec inner) {
  const Model m = outer.model;
  return {m, CompositionSpec{std::make_shared<const MapSpec>(std::move(inner)),
                             std::make_shared<const MapSpec>(std::move(outer))}};
}

MapSpec cayley_conjugate(MapSpec inner) {
  const Model m = inner.model == Model::disk ? Model::upper_half_plane : Model::disk;
  return {m, CayleyConjugateSpec{std::make_shared<const MapSpec>(std::move(inner))}};
}

MapSpec identity(Model m) { return polynomial({0.0, 1.0}, m); }

MapSpec blaschke_fixing_one(const std::vector<BlaschkeZero>& zeros) {
  const Complex at_one = SelfMap(blaschke(0.0, zeros))(1.0);
  return blaschke(-std::arg(at_one) / (2.0 * M_PI), zeros);
}

}  // namespace spec

namespace catalog {

SelfMap cubed_blaschke() { return SelfMap(spec::blaschke(0.0, {{Complex(2.0 / 3.0), 3}})); }
SelfMap cube() { return SelfMap(spec::polynomial({0.0, 0.0, 0.0, 1.0})); }
SelfMap identity() { return SelfMap(spec::identity()); }
SelfMap rotation(double turns) { return SelfMap(spec::mobius(std::polar(1.0, 2.0 * M_PI * turns), 0.0, 0.0, 1.0)); }
SelfMap hyperbolic_automorphism() { return SelfMap(spec::mobius(1.0, 0.5, 0.5, 1.0)); }
SelfMap cubic_tangent() { return SelfMap(spec::polynomial({0.25, 0.25, 0.75, -0.25})); }
SelfMap z_times_factor(double c) { return SelfMap(spec::blaschke(0.0, {{0.0, 1}, {Complex(-c), 1}})); }

SelfMap parabolic_automorphism(double shift) {
  const CayleyMap cayley = canonical_cayley();
  const MobiusTransform translate(1.0, shift, 0.0, 1.0);
  return SelfMap(spec::mobius(cayley.as_mobius().after(translate).after(cayley.inverse_mobius())));
}

SelfMap automorphism(Complex zeta) { return SelfMap(spec::mobius(DiskAutomorphism(zeta).as_mobius())); }

}  // namespace catalog

}  // namespace hypdisk
