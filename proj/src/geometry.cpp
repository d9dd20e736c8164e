#include "hypdisk/geometry.hpp"

#include <cstdio>

namespace hypdisk {

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

namespace {

void require_open_disk(Complex z, const char* what) {
  require_finite(z, what);
  if (std::abs(z) >= 1.0) throw DomainError(std::string(what) + " must lie in the open unit disk");
}

}  // namespace

MobiusTransform::MobiusTransform(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  for (Complex v : {a, b, c, d}) require_finite(v, "mobius coefficient");
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0 || std::abs(a * d - b * c) <= 1e-14 * scale * scale)
    throw DomainError("degenerate mobius transform (ad - bc = 0)");
}

Complex MobiusTransform::operator()(Complex z) const {
  const Complex den = c_ * z + d_;
  if (den == 0.0) throw PoleError("mobius transform evaluated at its pole " + format_complex(z));
  return (a_ * z + b_) / den;
}

Complex MobiusTransform::derivative(Complex z) const {
  const Complex den = c_ * z + d_;
  if (den == 0.0) throw PoleError("mobius derivative evaluated at its pole " + format_complex(z));
  return determinant() / (den * den);
}

MobiusTransform MobiusTransform::after(const MobiusTransform& in) const {
  return {a_ * in.a_ + b_ * in.c_, a_ * in.b_ + b_ * in.d_, c_ * in.a_ + d_ * in.c_,
          c_ * in.b_ + d_ * in.d_};
}

MobiusTransform MobiusTransform::inverse() const { return {d_, -b_, -c_, a_}; }

MobiusTransform MobiusTransform::normalized() const {
  Complex s = std::sqrt(determinant());
  Complex a = a_ / s, b = b_ / s, c = c_ / s, d = d_ / s;
  const Complex lead = std::abs(a) > 1e-12 ? a : c;
  if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0)) {
    a = -a, b = -b, c = -c, d = -d;
  }
  return {a, b, c, d};
}

DiskAutomorphism::DiskAutomorphism(Complex center) : center_(center) {
  require_open_disk(center, "automorphism center");
}

Complex DiskAutomorphism::operator()(Complex z) const {
  require_finite(z, "automorphism argument");
  if (std::abs(z) > 1.0 + tol::boundary) throw DomainError("automorphism argument outside the closed disk");
  return (center_ - z) / (1.0 - std::conj(center_) * z);
}

Complex DiskAutomorphism::derivative(Complex z) const {
  const Complex den = 1.0 - std::conj(center_) * z;
  return -(1.0 - std::norm(center_)) / (den * den);
}

MobiusTransform DiskAutomorphism::as_mobius() const { return {-1.0, center_, -std::conj(center_), 1.0}; }

CayleyMap::CayleyMap(Complex base) : base_(base) {
  require_finite(base, "cayley base");
  if (base.imag() <= 0.0) throw DomainError("cayley base must lie in the upper half-plane");
}

Complex CayleyMap::operator()(Complex z) const {
  require_finite(z, "cayley argument");
  const Complex den = z - std::conj(base_);
  if (std::abs(den) == 0.0) throw PoleError("cayley map evaluated at conj(base)");
  return (z - base_) / den;
}

Complex CayleyMap::inverse(Complex w) const {
  require_finite(w, "cayley inverse argument");
  if (w == 1.0) throw PoleError("inverse cayley map evaluated at w = 1");
  return (base_ - std::conj(base_) * w) / (1.0 - w);
}

Complex CayleyMap::derivative(Complex z) const {
  const Complex den = z - std::conj(base_);
  return (base_ - std::conj(base_)) / (den * den);
}

MobiusTransform CayleyMap::as_mobius() const { return {1.0, -base_, 1.0, -std::conj(base_)}; }

MobiusTransform CayleyMap::inverse_mobius() const { return {-std::conj(base_), base_, -1.0, 1.0}; }

CayleyMap canonical_cayley() { return CayleyMap(Complex(0.0, 1.0)); }

MobiusTransform swap_points(Complex eta, Complex zeta) {
  require_open_disk(eta, "swap point eta");
  require_open_disk(zeta, "swap point zeta");
  const MobiusTransform outer = DiskAutomorphism(zeta).as_mobius();
  const MobiusTransform middle = DiskAutomorphism(DiskAutomorphism(zeta)(eta)).as_mobius();
  return outer.after(middle).after(outer);
}

double pseudo_distance(Complex z, Complex zeta) {
  require_open_disk(z, "pseudo_distance argument");
  require_open_disk(zeta, "pseudo_distance argument");
  return std::abs((zeta - z) / (1.0 - std::conj(zeta) * z));
}

double hyperbolic_distance(Complex z, Complex zeta) { return std::atanh(pseudo_distance(z, zeta)); }

EuclideanCircle circle_through(Complex p, Complex q, Complex r) {
  // Circumcenter from the perpendicular bisector equations, relative to p.
  const Complex u = q - p, v = r - p;
  const double det = 2.0 * (u.real() * v.imag() - u.imag() * v.real());
  if (std::abs(det) <= 1e-300) throw DomainError("circle_through: collinear points");
  const double nu = std::norm(u), nv = std::norm(v);
  const Complex rel((v.imag() * nu - u.imag() * nv) / det, (u.real() * nv - v.real() * nu) / det);
  return {p + rel, std::abs(rel)};
}

NonEuclideanCircle::NonEuclideanCircle(Complex c, double rho) : center(c), pseudo_radius(rho) {
  require_open_disk(c, "non-euclidean center");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("pseudo-radius must lie in (0, 1)");
}

Horocycle::Horocycle(Complex a, double lvl) : contact(a), level(lvl) {
  require_finite(a, "horocycle contact");
  if (!on_unit_circle(a)) throw DomainError("horocycle contact must lie on the unit circle");
  if (!(lvl > 0.0) || !std::isfinite(lvl)) throw DomainError("horocycle level must be positive and finite");
  contact = a / std::abs(a);
}

Horocycle Horocycle::with_radius(Complex contact, double radius) {
  if (!(radius > 0.0 && radius < 1.0)) throw DomainError("horocycle radius must lie in (0, 1)");
  return Horocycle(contact, (1.0 - radius) / radius);
}

EuclideanCircle to_euclidean(const NonEuclideanCircle& c) {
  const DiskAutomorphism phi(c.center);
  std::array<Complex, 3> pts;
  for (int k = 0; k < 3; ++k) pts[k] = phi(std::polar(c.pseudo_radius, 2.0 * M_PI * k / 3.0));
  return circle_through(pts[0], pts[1], pts[2]);
}

EuclideanCircle to_euclidean(const Horocycle& h) {
  // In the half-plane the horocycle at infinity is the line Im u = level; the canonical Cayley map
  // sends it to the horocycle at 1, and the rotation by the contact point finishes the job.
  const CayleyMap cayley = canonical_cayley();
  const double spread = 1.0 + h.level;
  std::array<Complex, 3> pts;
  for (int k = 0; k < 3; ++k) pts[k] = h.contact * cayley(Complex(spread * (k - 1), h.level));
  return circle_through(pts[0], pts[1], pts[2]);
}

double horocycle_level(Complex alpha, Complex z) {
  require_finite(alpha, "horocycle contact");
  if (!on_unit_circle(alpha)) throw DomainError("horocycle contact must lie on the unit circle");
  require_open_disk(z, "horocycle point");
  return (1.0 - std::norm(z)) / std::norm(1.0 - std::conj(alpha) * z);
}

}  // namespace hypdisk
