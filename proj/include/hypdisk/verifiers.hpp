#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypdisk/fixedpoints.hpp"
#include "hypdisk/selfmap.hpp"

namespace hypdisk {

/// Worst-case margin of one inequality over a sample set. Every inequality is written so that it
/// asserts margin >= 0; the report passes when the worst margin is >= -1e-9.
struct VerificationReport {
  std::string name;
  int samples = 0;
  double worst_margin = 0.0;
  Complex witness{};
  std::optional<Complex> witness2;
  bool pass = false;
  bool equality = false;  // every sample sits on the equality case (within 1e-10)
  std::uint64_t seed = 0;
  std::string status;  // "pass", "fail" or "skipped: precondition"
  std::string note;
  std::map<std::string, double> details;
};

struct GridOptions {
  int samples = 256;
  std::uint64_t seed = 42;
  Execution exec = Execution::parallel;
};

/// Golden-angle spiral (first half) plus seeded uniform points (second half) in |z| <= radius.
std::vector<Complex> disk_grid(int n, std::uint64_t seed, double radius = 0.95);
/// Image of disk_grid under the inverse canonical Cayley map.
std::vector<Complex> halfplane_grid(int n, std::uint64_t seed);
/// Independent seeded pairs of disk points.
std::vector<std::pair<Complex, Complex>> disk_pairs(int n, std::uint64_t seed, double radius = 0.95);

VerificationReport check_schwarz(const SelfMap& f, const GridOptions& grid = {});
VerificationReport check_schwarz_pick(const SelfMap& f, const GridOptions& grid = {});
VerificationReport check_uhp_pick(const SelfMap& g, const GridOptions& grid = {});
/// Julia's inequality for a half-plane map g with boundary fixed point 0 and multiplier beta;
/// the reciprocal form Im(1/g) <= Im(1/(beta z)) is evaluated alongside and must agree.
VerificationReport check_julia(const SelfMap& g, double beta, const GridOptions& grid = {});
/// f'(1) >= (1 - |z|^2)/|1 - z|^2 * |1 - f|^2 / (1 - |f|^2) for a disk map fixing 1.
VerificationReport check_julia_wolff_disk(const SelfMap& f, const GridOptions& grid = {});
/// alpha f'(alpha) / f(alpha) is real and >= 1 at every boundary maximum of |f| (f(0) = 0).
VerificationReport check_jack(const SelfMap& f, int scan = 1024);
/// f'(1) >= 2 / (1 + |f'(0)|) for a disk map fixing 0 and 1.
VerificationReport check_unkelbach(const SelfMap& f);
/// Product of the multipliers at two distinct boundary fixed points is at least 1.
VerificationReport check_boundary_product(const SelfMap& f, Complex alpha1, Complex alpha2);
/// Im g(x + iy) / y is nondecreasing as y decreases along y_grid.
VerificationReport check_wolff_monotonicity(const SelfMap& g, double x, const std::vector<double>& y_grid);

/// A map that agrees with the identity to order >= 4 at a boundary point while not being the
/// identity. Only a broken map construction or a numerical fault can produce one.
class BurnsKrantzViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TangencyResult {
  int order = 1;  // max_order when the map is the identity
  bool identity = false;
  double slope = 0.0;                  // log-log regression slope
  std::vector<Complex> coefficients;   // (f(z) - z) / (z - alpha)^order along the radial samples
  Complex leading_coefficient{};       // estimate nearest to alpha
};

/// Largest k with f(z) - z = O((z - alpha)^k) at a boundary fixed point alpha.
TangencyResult tangency_order(const SelfMap& f, Complex alpha, int max_order = 8);

/// Two-sided bounds for a positive harmonic function at distance rho from the center of a disk of
/// radius r, given its center value u0.
std::pair<double, double> harnack_bounds(double u0, double r, double rho);

inline const std::vector<std::string>& inequality_names() {
  static const std::vector<std::string> names{"schwarz",          "schwarz-pick", "uhp-pick",
                                              "julia",            "julia-wolff-disk", "jack",
                                              "unkelbach",        "boundary-product", "wolff-monotonicity"};
  return names;
}

/// Run one named inequality (or every one for "all") on a disk map, choosing base points from its
/// fixed-point analysis. Inapplicable checks come back with status "skipped: precondition".
std::vector<VerificationReport> verify(const SelfMap& f, const std::string& which, const GridOptions& grid = {});

}  // namespace hypdisk
