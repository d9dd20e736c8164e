#pragma once

#include <array>

#include "hypdisk/core.hpp"

namespace hypdisk {

/// z -> (a z + b) / (c z + d) with ad - bc != 0.
class MobiusTransform {
 public:
  MobiusTransform(Complex a, Complex b, Complex c, Complex d);

  static MobiusTransform identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

  /// (*this) o inner
  MobiusTransform after(const MobiusTransform& inner) const;
  MobiusTransform inverse() const;

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }

  /// Scale coefficients so that the determinant is 1 and the leading nonzero of (a, c) has
  /// nonnegative real part. Two transforms are the same map iff their normalized forms agree.
  MobiusTransform normalized() const;

 private:
  Complex a_, b_, c_, d_;
};

/// The self-inverse automorphism z -> (center - z) / (1 - conj(center) z) swapping 0 and center.
class DiskAutomorphism {
 public:
  explicit DiskAutomorphism(Complex center);

  Complex center() const { return center_; }
  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  MobiusTransform as_mobius() const;

 private:
  Complex center_;
};

/// z -> (z - base) / (z - conj(base)), upper half-plane onto the unit disk with base -> 0.
class CayleyMap {
 public:
  explicit CayleyMap(Complex base);

  Complex base() const { return base_; }
  Complex operator()(Complex z) const;
  Complex inverse(Complex w) const;
  Complex derivative(Complex z) const;
  MobiusTransform as_mobius() const;
  MobiusTransform inverse_mobius() const;

 private:
  Complex base_;
};

/// Canonical frame change used for half-plane conjugation: C(i) = 0, C(0) = -1, C(inf) = 1.
CayleyMap canonical_cayley();

/// Transform exchanging eta and zeta; an involutive automorphism of the disk.
MobiusTransform swap_points(Complex eta, Complex zeta);

/// |(zeta - z) / (1 - conj(zeta) z)| for two points of the open disk.
double pseudo_distance(Complex z, Complex zeta);

/// Poincare distance atanh(pseudo_distance).
double hyperbolic_distance(Complex z, Complex zeta);

struct EuclideanCircle {
  Complex center;
  double radius;

  Complex point_at(double theta) const { return center + std::polar(radius, theta); }
};

/// Circle through three non-collinear points.
EuclideanCircle circle_through(Complex p, Complex q, Complex r);

struct NonEuclideanCircle {
  Complex center;
  double pseudo_radius;

  NonEuclideanCircle(Complex center, double pseudo_radius);
};

struct Horocycle {
  Complex contact;
  double level;

  Horocycle(Complex contact, double level);

  /// Horocycle whose Euclidean realization has the given radius (0 < radius < 1).
  static Horocycle with_radius(Complex contact, double radius);
};

EuclideanCircle to_euclidean(const NonEuclideanCircle& c);
EuclideanCircle to_euclidean(const Horocycle& h);

/// (1 - |z|^2) / |1 - conj(alpha) z|^2 for |alpha| = 1, |z| < 1.
double horocycle_level(Complex alpha, Complex z);

}  // namespace hypdisk
