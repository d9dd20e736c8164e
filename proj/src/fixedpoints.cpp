#include "hypdisk/fixedpoints.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>

namespace hypdisk {

const char* to_string(FixedPointKind k) { return k == FixedPointKind::interior ? "interior" : "boundary"; }

const char* to_string(DenjoyWolffMethod m) { return m == DenjoyWolffMethod::wolff ? "wolff" : "iterate"; }

namespace {

constexpr double two_pi = 2.0 * M_PI;
constexpr double accept_residual = 1e-10;

double wrap_pi(double x) { return std::remainder(x, two_pi); }

double residual_at(const SelfMap& f, double t) {
  const Complex z = std::polar(1.0, t);
  return std::abs(f(z) - z);
}

// Lifted phase arg f(e^{it}) - t near a reference value of the lift.
double local_lift(const SelfMap& f, double t, double reference) {
  return reference + wrap_pi(std::arg(f(std::polar(1.0, t))) - t - reference);
}

double golden_minimize(const std::function<double(double)>& g, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    if (gc <= gd) {
      hi = d, d = c, gd = gc;
      c = hi - invphi * (hi - lo), gc = g(c);
    } else {
      lo = c, c = d, gc = gd;
      d = lo + invphi * (hi - lo), gd = g(d);
    }
  }
  return gc <= gd ? c : d;
}

// Newton steps on the lifted phase, kept only while they reduce the residual.
double newton_polish_angle(const SelfMap& f, double t, double level) {
  for (int it = 0; it < 3; ++it) {
    const Complex z = std::polar(1.0, t);
    const auto [fz, dfz] = f.value_and_derivative(z);
    if (fz == 0.0) break;
    const double slope = (z * dfz / fz).real() - 1.0;
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double g = local_lift(f, t, level) - level;
    const double next = t - g / slope;
    if (!(residual_at(f, next) < residual_at(f, t))) break;
    t = next;
  }
  return t;
}

// At a tangential fixed point the residual only drops like (t - t0)^2, so minimizing it stalls near
// sqrt(eps). The phase slope Re(z f'/f) - 1 has a simple zero there instead; bisect on it.
// Plain Newton on f(z) - z converges to multiple roots too, linearly, and the step h/h' stays accurate
// well after the residual itself has sunk into rounding noise. Stop once the steps stop shrinking.
double newton_multiple(const SelfMap& f, double t) {
  Complex z = std::polar(1.0, t);
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 400; ++it) {
    const auto [fz, dfz] = f.value_and_derivative(z);
    if (dfz == 1.0) break;
    const Complex step = (fz - z) / (dfz - 1.0);
    const double size = std::abs(step);
    if (!std::isfinite(size) || size >= last) break;
    z -= step;
    last = size;
    if (size < 1e-17) break;
  }
  return std::arg(z);
}

double polish_tangential(const SelfMap& f, double t) {
  if (residual_at(f, t) < 1e-12) {
    const double n = newton_multiple(f, t);
    if (std::abs(wrap_pi(n - t)) < 1e-3 && residual_at(f, n) <= accept_residual) t = t + wrap_pi(n - t);
  }
  auto slope = [&](double x) {
    const Complex z = std::polar(1.0, x);
    const auto [fz, dfz] = f.value_and_derivative(z);
    return (z * dfz / fz).real() - 1.0;
  };
  for (double delta = 1e-7; delta <= 1e-3; delta *= 10.0) {
    double lo = t - delta, hi = t + delta;
    double slo = slope(lo);
    const double shi = slope(hi);
    if (!std::isfinite(slo) || !std::isfinite(shi) || slo * shi > 0.0) continue;
    for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double sm = slope(mid);
      if ((sm <= 0.0) == (slo <= 0.0)) lo = mid, slo = sm;
      else hi = mid;
    }
    const double root = 0.5 * (lo + hi);
    return residual_at(f, root) <= residual_at(f, t) + 1e-15 ? root : t;
  }
  return t;
}

// Near a tangential boundary fixed point f(z) - z is tiny without a root nearby. Require the Newton
// error estimate to be small against the distance to the circle.
bool genuine_interior(const SelfMap& f, Complex z) {
  const double residual = std::abs(f(z) - z);
  if (!(residual <= 1e-12)) return false;
  return residual <= 1e-3 * (1.0 - std::abs(z)) * std::abs(f.derivative(z) - 1.0);
}

// Damped Newton on s f(z) - z restricted to the open disk.
struct NewtonResult {
  Complex z;
  double residual;
  bool converged;
};

NewtonResult damped_newton(const SelfMap& f, double s, Complex z, double tol, int max_iter = 200,
                           bool stay_inside = true) {
  auto residual = [&](Complex w) { return std::abs(s * f(w) - w); };
  double r = residual(z);
  for (int it = 0; it < max_iter && r > tol; ++it) {
    const auto [fz, dfz] = f.value_and_derivative(z);
    const Complex jac = s * dfz - 1.0;
    if (jac == 0.0) break;
    const Complex step = -(s * fz - z) / jac;
    double lambda = 1.0;
    bool moved = false;
    for (int halvings = 0; halvings < 40; ++halvings, lambda *= 0.5) {
      const Complex trial = z + lambda * step;
      if (stay_inside && std::abs(trial) >= 1.0) continue;
      double rt;
      try {
        rt = residual(trial);
      } catch (const std::domain_error&) {
        continue;
      }
      if (rt < r || (rt == r && halvings == 0)) {
        z = trial, r = rt, moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return {z, r, r <= tol};
}

// Newton on f(z) - z from a point near the circle, then a golden-section refinement of the angle.
std::optional<Complex> polish_boundary(const SelfMap& f, Complex guess) {
  Complex z = guess;
  try {
    z = damped_newton(f, 1.0, guess, 1e-15, 200, false).z;
  } catch (const std::domain_error&) {
  }
  if (!is_finite(z) || std::abs(std::abs(z) - 1.0) > 1e-4) z = guess;
  const double t0 = std::arg(z);
  const double width = std::max(1e-9, 4.0 * std::abs(z / std::abs(z) - guess / std::abs(guess)) + 1e-6);
  const double t = golden_minimize([&](double x) { return residual_at(f, x); }, t0 - width, t0 + width, 1e-14);
  double best_t = residual_at(f, t) <= residual_at(f, t0) ? t : t0;
  best_t = polish_tangential(f, best_t);
  if (residual_at(f, best_t) > accept_residual) return std::nullopt;
  return std::polar(1.0, best_t);
}

double normalized_angle(Complex z) {
  double t = std::arg(z);
  return t < 0.0 ? t + two_pi : t;
}

// Candidates from a multiple root scatter by up to eps^(1/m); they belong to one root when the
// residual stays negligible between them.
bool same_root(const SelfMap& f, Complex p, Complex alpha) {
  const double gap = std::abs(p - alpha);
  if (gap < 1e-7) return true;
  if (gap > 1e-3) return false;
  const double mid = std::arg(p) + 0.5 * wrap_pi(std::arg(alpha) - std::arg(p));
  return residual_at(f, mid) <= accept_residual;
}

void add_unique(std::vector<Complex>& pts, const SelfMap& f, Complex alpha) {
  for (Complex& p : pts) {
    if (same_root(f, p, alpha)) {
      if (std::abs(f(alpha) - alpha) < std::abs(f(p) - p)) p = alpha;
      return;
    }
  }
  pts.push_back(alpha);
}

}  // namespace

BoundaryScan boundary_fixed_points(const SelfMap& f, int resolution, Execution exec) {
  if (f.model() != Model::disk) throw ModelMismatch("boundary_fixed_points expects a disk map");
  if (resolution < 64) throw DomainError("boundary scan resolution must be at least 64");
  BoundaryScan scan;
  if (is_identity(f)) {
    scan.whole_circle = true;
    scan.diagnostic = "identity map: every boundary point is fixed";
    return scan;
  }

  const auto n = static_cast<std::size_t>(resolution);
  const double h = two_pi / resolution;
  const std::vector<Complex> values =
      tabulate<Complex>(n + 1, [&](std::size_t k) { return f(std::polar(1.0, h * double(k))); }, exec);

  std::vector<double> lift(n + 1);
  std::vector<double> err(n + 1);
  bool vanished = false;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = h * double(k);
    err[k] = std::abs(values[k] - std::polar(1.0, t));
    if (std::abs(values[k]) < 1e-300) vanished = true;
    const double raw = std::arg(values[k]) - t;
    if (k == 0) {
      lift[k] = wrap_pi(raw);
      continue;
    }
    const double jump = wrap_pi(raw - lift[k - 1]);
    if (std::abs(jump) > 0.75 * M_PI) scan.lift_discontinuous = true;
    lift[k] = lift[k - 1] + jump;
  }
  if (vanished) scan.diagnostic = "map vanishes on the boundary; phase lift undefined there";
  else if (scan.lift_discontinuous)
    scan.diagnostic = "phase lift jumps by more than 3pi/4 between panels; raise the resolution";

  std::vector<Complex> found;
  // Transversal fixed points: the lift crosses a multiple of 2 pi inside a panel.
  for (std::size_t k = 0; k < n; ++k) {
    const double level = two_pi * std::round(0.5 * (lift[k] + lift[k + 1]) / two_pi);
    const double a = lift[k] - level, b = lift[k + 1] - level;
    if (a * b > 0.0) continue;
    double lo = h * double(k), hi = h * double(k + 1);
    double glo = a;
    const double ref = lift[k];
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      const double gm = local_lift(f, mid, ref) - level;
      if ((gm <= 0.0) == (glo <= 0.0)) lo = mid, glo = gm;
      else hi = mid;
    }
    const double t = polish_tangential(f, newton_polish_angle(f, 0.5 * (lo + hi), level));
    if (residual_at(f, t) <= accept_residual) add_unique(found, f, std::polar(1.0, t));
  }
  // Tangential fixed points (multiplier 1) do not change the sign of the lift; catch them as local
  // minima of |f(e^{it}) - e^{it}|.
  for (std::size_t k = 0; k < n; ++k) {
    const double prev = err[k == 0 ? n - 1 : k - 1], next = err[k + 1];
    if (!(err[k] <= prev && err[k] <= next) || err[k] > 0.05) continue;
    double t = golden_minimize([&](double x) { return residual_at(f, x); }, h * (double(k) - 1.0),
                                     h * (double(k) + 1.0), 1e-14);
    t = polish_tangential(f, t);
    if (residual_at(f, t) <= accept_residual) add_unique(found, f, std::polar(1.0, t));
  }

  std::sort(found.begin(), found.end(),
            [](Complex x, Complex y) { return normalized_angle(x) < normalized_angle(y); });
  // The seam at t = 0 / 2 pi can produce the same point twice.
  if (found.size() > 1 && same_root(f, found.front(), found.back())) found.pop_back();
  scan.points = std::move(found);
  return scan;
}

std::optional<Complex> interior_fixed_point(const SelfMap& f) {
  if (f.model() != Model::disk) throw ModelMismatch("interior_fixed_point expects a disk map");
  std::vector<Complex> seeds{0.0};
  for (double r : {0.5, 0.9})
    for (int k = 0; k < 8; ++k) seeds.push_back(std::polar(r, two_pi * k / 8.0));
  for (Complex seed : seeds) {
    NewtonResult res;
    try {
      res = damped_newton(f, 1.0, seed, 1e-13);
    } catch (const std::domain_error&) {
      continue;
    }
    if (std::abs(res.z) < 1.0 - tol::boundary && genuine_interior(f, res.z)) return res.z;
  }
  return std::nullopt;
}

double boundary_multiplier(const SelfMap& f, Complex alpha) {
  const auto [fa, dfa] = f.value_and_derivative(alpha);
  return (alpha * dfa / fa).real();
}

AngularDerivative angular_derivative(const SelfMap& f, Complex alpha) {
  if (f.model() != Model::disk) throw ModelMismatch("angular_derivative expects a disk map");
  require_finite(alpha, "angular derivative point");
  if (!on_unit_circle(alpha) || std::abs(f(alpha) - alpha) > 1e-9)
    throw PreconditionError("angular_derivative: " + format_complex(alpha) + " is not a boundary fixed point");
  const Complex a = alpha / std::abs(alpha);

  AngularDerivative out;
  constexpr int first = 4, last = 20;
  for (int k = first; k <= last; ++k) {
    const double h = std::ldexp(1.0, -k);
    const double m = std::abs(f((1.0 - h) * a));
    out.ratios.push_back((1.0 - m) / h);
  }
  // Richardson table eliminating the O(h) and O(h^2) terms.
  const std::size_t n = out.ratios.size();
  std::vector<double> level0 = out.ratios, level1(n), level2(n);
  for (std::size_t k = 1; k < n; ++k) level1[k] = 2.0 * level0[k] - level0[k - 1];
  for (std::size_t k = 2; k < n; ++k) level2[k] = (4.0 * level1[k] - level1[k - 1]) / 3.0;

  const double tail = out.ratios.back(), before = out.ratios[n - 2];
  if (!std::isfinite(tail) || tail > 1e8 || (tail > 1e3 && tail > 1.9 * before)) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    out.consistent = false;
    return out;
  }
  // Late estimates are dominated by cancellation in 1 - |f|; take the settled middle of the table.
  std::size_t best = 2;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 3; k < n; ++k) {
    const double gap = std::abs(level2[k] - level2[k - 1]);
    if (gap < best_gap) best_gap = gap, best = k;
  }
  out.value = level2[best];
  out.consistent = best_gap < 1e-6;
  try {
    out.analytic = std::abs(f.derivative(a));
    if (std::abs(*out.analytic - out.value) > 1e-6 * std::max(1.0, *out.analytic)) out.consistent = false;
  } catch (const std::domain_error&) {
  }
  return out;
}

namespace {

FixedPointRecord interior_record(const SelfMap& f, Complex z) {
  return {z, FixedPointKind::interior, f.derivative(z), true};
}

FixedPointRecord boundary_record(const SelfMap& f, Complex alpha, bool dw) {
  const Complex a = alpha / std::abs(alpha);
  return {a, FixedPointKind::boundary, Complex(boundary_multiplier(f, a), 0.0), dw};
}

std::string describe(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.3e, %.3e), |z| = %.12f", z.real(), z.imag(), std::abs(z));
  return buf;
}

// Interior point if Newton on f(z) - z settles strictly inside, otherwise the polished boundary point.
std::optional<FixedPointRecord> classify_limit(const SelfMap& f, Complex guess) {
  NewtonResult res{guess, 0.0, false};
  try {
    res = damped_newton(f, 1.0, guess, 1e-14);
  } catch (const std::domain_error&) {
  }
  if (std::abs(res.z) < 1.0 - 1e-6 && genuine_interior(f, res.z)) return interior_record(f, res.z);
  if (auto alpha = polish_boundary(f, guess / std::abs(guess))) return boundary_record(f, *alpha, true);
  return std::nullopt;
}

DenjoyWolffResult by_wolff(const SelfMap& f) {
  DenjoyWolffResult out;
  out.method = DenjoyWolffMethod::wolff;
  Complex z = 0.0, previous = 0.0;
  for (int p = 1; p <= 20; ++p) {
    const double n = std::ldexp(1.0, p);
    const double s = 1.0 - 1.0 / n;
    NewtonResult res = damped_newton(f, s, z, 1e-14);
    if (!res.converged) {
      // The contraction s f can always be iterated into the basin; retry from a few steps of it.
      Complex w = z;
      for (int k = 0; k < 200; ++k) w = s * f(w);
      res = damped_newton(f, s, w, 1e-14);
    }
    if (!res.converged && res.residual > 1e-11)
      throw NonConvergence("wolff approximant for n = " + std::to_string(long(n)) +
                           " did not converge: residual " + std::to_string(res.residual) + " at " + describe(res.z));
    previous = z;
    z = res.z;
    out.approximant_moduli.push_back(std::abs(z));
  }
  auto rec = classify_limit(f, z);
  if (!rec) throw NonConvergence("wolff approximants escape toward " + describe(z) + " but no fixed point polishes there");
  out.record = *rec;
  out.notes = std::string("last approximant step ") + describe(z - previous);
  return out;
}

DenjoyWolffResult by_iteration(const SelfMap& f) {
  DenjoyWolffResult out;
  out.method = DenjoyWolffMethod::iterate;
  constexpr long max_steps = 5'000'000;
  constexpr int sustained = 50;
  Complex z = 0.0;
  int near_boundary = 0;
  std::optional<Complex> last_candidate;
  double last_gap = std::numeric_limits<double>::infinity();
  for (long k = 1; k <= max_steps; ++k) {
    const Complex next = f(z);
    const double step = std::abs(next - z);
    z = next;
    out.iterations = k;
    // Orbits tending to a tangential boundary point approach it like a power of 1/k, far too slowly to
    // reach the circle. At doubling checkpoints polish the nearest boundary fixed point and accept it
    // once the orbit is seen closing in on the same attracting point twice in a row.
    if (k >= 4096 && (k & (k - 1)) == 0 && std::abs(z) > 0.99) {
      std::optional<Complex> alpha;
      try {
        alpha = polish_boundary(f, z / std::abs(z));
      } catch (const std::domain_error&) {
      }
      if (alpha && boundary_multiplier(f, *alpha) <= 1.0 + tol::boundary) {
        const double gap = std::abs(z - *alpha);
        if (last_candidate && std::abs(*last_candidate - *alpha) < 1e-7 && gap < last_gap) {
          out.record = boundary_record(f, *alpha, true);
          out.notes = "orbit creeps toward a tangential boundary point; limit polished at step " + std::to_string(k);
          return out;
        }
        last_gap = gap;
      }
      last_candidate = alpha;
    }
    near_boundary = 1.0 - std::abs(z) < 1e-9 ? near_boundary + 1 : 0;
    if (step < 1e-13 || near_boundary >= sustained) {
      if (auto rec = classify_limit(f, z)) {
        out.record = *rec;
        out.notes = step < 1e-13 ? "orbit stalled" : "orbit reached the boundary";
        return out;
      }
      break;
    }
  }
  // Elliptic automorphisms rotate the orbit forever about their interior fixed point.
  if (auto interior = interior_fixed_point(f)) {
    out.record = interior_record(f, *interior);
    out.notes = "orbit does not settle; interior fixed point located by Newton";
    return out;
  }
  throw NonConvergence("orbit of 0 did not converge after " + std::to_string(out.iterations) +
                       " steps; last iterate " + describe(z));
}

}  // namespace

DenjoyWolffResult denjoy_wolff(const SelfMap& f, DenjoyWolffMethod method) {
  if (f.model() != Model::disk) throw ModelMismatch("denjoy_wolff expects a disk map");
  if (is_identity(f)) throw PreconditionError("denjoy_wolff: the identity has no distinguished fixed point");
  return method == DenjoyWolffMethod::wolff ? by_wolff(f) : by_iteration(f);
}

AnalysisReport analyze(const SelfMap& f, const AnalysisOptions& options) {
  if (f.model() != Model::disk) throw ModelMismatch("analyze expects a disk map");
  AnalysisReport report;
  report.map = f.spec();
  report.resolution = options.resolution;
  if (is_identity(f)) {
    report.identity = true;
    report.denjoy_wolff_source = "none (identity)";
    report.notes.emplace_back("identity map: every point of the closed disk is fixed");
    return report;
  }

  const std::optional<Complex> interior = interior_fixed_point(f);
  if (interior) report.fixed_points.push_back(interior_record(f, *interior));

  const BoundaryScan scan = boundary_fixed_points(f, options.resolution, options.exec);
  if (!scan.diagnostic.empty()) report.notes.push_back(scan.diagnostic);
  for (Complex alpha : scan.points) report.fixed_points.push_back(boundary_record(f, alpha, false));

  if (interior) {
    report.denjoy_wolff_source = "interior fixed point (damped Newton)";
  } else {
    auto it = std::min_element(report.fixed_points.begin(), report.fixed_points.end(),
                               [](const auto& x, const auto& y) { return x.multiplier.real() < y.multiplier.real(); });
    if (it != report.fixed_points.end() && it->multiplier.real() <= 1.0 + tol::boundary) {
      it->is_denjoy_wolff = true;
      report.denjoy_wolff_source = "boundary scan (least angular derivative)";
    } else {
      const DenjoyWolffResult dw = denjoy_wolff(f, DenjoyWolffMethod::wolff);
      report.fixed_points.push_back(dw.record);
      report.denjoy_wolff_source = "wolff approximants (missed by the boundary scan)";
    }
  }

  for (const auto& r : report.fixed_points) {
    if (r.kind != FixedPointKind::boundary) continue;
    const AngularDerivative ad = angular_derivative(f, r.location);
    if (!ad.consistent) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "radial angular derivative %.9g at %s disagrees with the analytic value %.9g",
                    ad.value, format_complex(r.location).c_str(), r.multiplier.real());
      report.notes.emplace_back(buf);
    }
  }
  return report;
}

}  // namespace hypdisk
