#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hypdisk {

using Complex = std::complex<double>;

namespace tol {
// A point is on the unit circle when ||z| - 1| <= boundary.
inline constexpr double boundary = 1e-9;
// Pass rule shared by every verification report: margin >= -margin.
inline constexpr double margin = 1e-9;
// Equality cases are flagged when the extreme margin is within this.
inline constexpr double equality = 1e-10;
}  // namespace tol

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ModelMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw DomainError(std::string(what) + ": non-finite complex value");
}

inline bool on_unit_circle(Complex z, double eps = tol::boundary) {
  return std::abs(std::abs(z) - 1.0) <= eps;
}

inline Complex polar_deg(double r, double degrees) {
  return std::polar(r, degrees * M_PI / 180.0);
}

std::string format_complex(Complex z);

}  // namespace hypdisk
