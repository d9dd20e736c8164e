#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypdisk/selfmap.hpp"

namespace hypdisk {

enum class FixedPointKind { interior, boundary };

const char* to_string(FixedPointKind k);

struct FixedPointRecord {
  Complex location;
  FixedPointKind kind = FixedPointKind::boundary;
  // f'(location) at an interior point; the positive angular derivative (imaginary part 0) on the
  // boundary.
  Complex multiplier;
  bool is_denjoy_wolff = false;
};

struct BoundaryScan {
  std::vector<Complex> points;  // sorted by argument in [0, 2 pi)
  bool whole_circle = false;    // the map is the identity
  bool lift_discontinuous = false;
  std::string diagnostic;
};

inline constexpr int default_scan_resolution = 4096;

/// Solutions of f(e^{it}) = e^{it}: sign changes of the lifted phase arg f(e^{it}) - t plus local
/// minima of |f(e^{it}) - e^{it}| (tangential fixed points), each polished and accepted when
/// |f(alpha) - alpha| <= 1e-10.
BoundaryScan boundary_fixed_points(const SelfMap& f, int resolution = default_scan_resolution,
                                   Execution exec = Execution::parallel);

/// The interior fixed point of a non-identity disk self-map, if there is one.
std::optional<Complex> interior_fixed_point(const SelfMap& f);

/// Re(alpha f'(alpha) / f(alpha)) at a boundary point, from the analytic derivative.
double boundary_multiplier(const SelfMap& f, Complex alpha);

struct AngularDerivative {
  double value = 0.0;  // radial limit, +infinity when the ratio diverges
  bool infinite = false;
  std::optional<double> analytic;  // |f'(alpha)| for boundary-differentiable specs
  bool consistent = true;          // Richardson estimates settled and agree with the analytic value
  std::vector<double> ratios;      // (1 - |f(r alpha)|) / (1 - r) for r = 1 - 2^-k, k = 4..20
};

/// lim_{r -> 1-} (1 - |f(r alpha)|) / (1 - r) at a boundary fixed point alpha.
AngularDerivative angular_derivative(const SelfMap& f, Complex alpha);

enum class DenjoyWolffMethod { wolff, iterate };

const char* to_string(DenjoyWolffMethod m);

struct DenjoyWolffResult {
  FixedPointRecord record;
  DenjoyWolffMethod method = DenjoyWolffMethod::wolff;
  std::vector<double> approximant_moduli;  // |alpha_n| along the doubling schedule (wolff)
  long iterations = 0;                     // orbit length (iterate)
  std::string notes;
};

/// Denjoy-Wolff point by Wolff's approximants alpha_n = (1 - 1/n) f(alpha_n), n = 2, 4, ..., 2^20,
/// or by iterating f from 0. Throws NonConvergence with diagnostics when neither settles.
DenjoyWolffResult denjoy_wolff(const SelfMap& f, DenjoyWolffMethod method);

struct AnalysisOptions {
  int resolution = default_scan_resolution;
  Execution exec = Execution::parallel;
};

struct AnalysisReport {
  MapSpec map;
  bool identity = false;
  std::vector<FixedPointRecord> fixed_points;
  int resolution = default_scan_resolution;
  std::string denjoy_wolff_source;  // how the distinguished point was selected
  std::vector<std::string> notes;
};

/// All fixed points of a validated, non-constant disk self-map with the Denjoy-Wolff point marked.
AnalysisReport analyze(const SelfMap& f, const AnalysisOptions& options = {});

}  // namespace hypdisk
