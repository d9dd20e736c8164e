#include "hypdisk/verifiers.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

namespace hypdisk {

std::vector<Complex> disk_grid(int n, std::uint64_t seed, double radius) {
  if (n < 1) throw DomainError("grid needs at least one point");
  std::vector<Complex> pts;
  pts.reserve(n);
  const int spiral = n / 2;
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < spiral; ++k) pts.push_back(std::polar(radius * std::sqrt((k + 0.5) / spiral), golden * k));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (static_cast<int>(pts.size()) < n) {
    const double r = radius * std::sqrt(u(rng));
    pts.push_back(std::polar(r, 2.0 * M_PI * u(rng)));
  }
  return pts;
}

std::vector<Complex> halfplane_grid(int n, std::uint64_t seed) {
  const CayleyMap cayley = canonical_cayley();
  std::vector<Complex> pts = disk_grid(n, seed);
  for (Complex& p : pts) p = cayley.inverse(p);
  return pts;
}

std::vector<std::pair<Complex, Complex>> disk_pairs(int n, std::uint64_t seed, double radius) {
  if (n < 1) throw DomainError("grid needs at least one pair");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&] { return std::polar(radius * std::sqrt(u(rng)), 2.0 * M_PI * u(rng)); };
  std::vector<std::pair<Complex, Complex>> out(n);
  for (auto& p : out) p = {draw(), draw()};
  return out;
}

namespace {

VerificationReport make_report(std::string name, int samples, std::uint64_t seed) {
  VerificationReport r;
  r.name = std::move(name);
  r.samples = samples;
  r.seed = seed;
  return r;
}

void finish(VerificationReport& r, double worst, double best) {
  r.worst_margin = worst;
  r.pass = !std::isnan(worst) && worst >= -tol::margin;
  r.equality = r.pass && std::abs(worst) <= tol::equality && std::abs(best) <= tol::equality;
  r.status = r.pass ? "pass" : "fail";
}

// Worst (minimum) and best (maximum) of margin(i) over n samples.
struct Sweep {
  Extremum worst, best;
};

Sweep sweep(std::size_t n, const std::function<double(std::size_t)>& margin, Execution exec) {
  return {min_over(n, margin, exec), max_over(n, margin, exec)};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace

VerificationReport check_schwarz(const SelfMap& f, const GridOptions& grid) {
  require(f.model() == Model::disk, "schwarz: disk map required");
  require(std::abs(f(0.0)) <= 1e-12, "schwarz: f(0) != 0");
  const std::vector<Complex> pts = disk_grid(grid.samples, grid.seed);
  const double derivative_margin = 1.0 - std::abs(f.derivative(0.0));
  const Sweep s = sweep(
      pts.size(), [&](std::size_t i) { return std::abs(pts[i]) - std::abs(f(pts[i])); }, grid.exec);

  VerificationReport r = make_report("schwarz", grid.samples, grid.seed);
  const bool derivative_worst = derivative_margin < s.worst.value;
  r.witness = derivative_worst ? Complex(0.0) : pts[s.worst.index];
  r.details["derivative_margin"] = derivative_margin;
  r.details["modulus_margin"] = s.worst.value;
  finish(r, std::min(derivative_margin, s.worst.value), std::max(derivative_margin, s.best.value));
  // Rotation is the equality case: |f'(0)| = 1.
  r.equality = r.pass && std::abs(derivative_margin) <= tol::equality;
  if (r.equality) r.note = "equality case: f is a rotation";
  return r;
}

VerificationReport check_schwarz_pick(const SelfMap& f, const GridOptions& grid) {
  require(f.model() == Model::disk, "schwarz-pick: disk map required");
  const auto pairs = disk_pairs(grid.samples, grid.seed);
  auto margin = [&](std::size_t i) {
    const auto [zeta, z] = pairs[i];
    const auto [fz_, dfz] = f.value_and_derivative(zeta);
    const Complex fz = f(z);
    const double pick = pseudo_distance(zeta, z) - pseudo_distance(fz_, fz);
    const double deriv = (1.0 - std::norm(fz_)) / (1.0 - std::norm(zeta)) - std::abs(dfz);
    return std::min(pick, deriv);
  };
  const Sweep s = sweep(pairs.size(), margin, grid.exec);
  VerificationReport r = make_report("schwarz-pick", grid.samples, grid.seed);
  r.witness = pairs[s.worst.index].first;
  r.witness2 = pairs[s.worst.index].second;
  finish(r, s.worst.value, s.best.value);
  if (r.equality) r.note = "equality case: f is a disk automorphism";
  return r;
}

VerificationReport check_uhp_pick(const SelfMap& g, const GridOptions& grid) {
  require(g.model() == Model::upper_half_plane, "uhp-pick: half-plane map required");
  const CayleyMap cayley = canonical_cayley();
  auto pairs = disk_pairs(grid.samples, grid.seed);
  for (auto& [a, b] : pairs) a = cayley.inverse(a), b = cayley.inverse(b);
  auto kernel = [](Complex z, Complex w) { return z.imag() * w.imag() / std::norm(z - std::conj(w)); };
  auto margin = [&](std::size_t i) {
    const auto [zeta, z] = pairs[i];
    const auto [gzeta, dg] = g.value_and_derivative(zeta);
    const Complex gz = g(z);
    const double pick = kernel(gz, gzeta) - kernel(z, zeta);
    const double deriv = gzeta.imag() / zeta.imag() - std::abs(dg);
    return std::min(pick, deriv);
  };
  const Sweep s = sweep(pairs.size(), margin, grid.exec);
  VerificationReport r = make_report("uhp-pick", grid.samples, grid.seed);
  r.witness = pairs[s.worst.index].first;
  r.witness2 = pairs[s.worst.index].second;
  finish(r, s.worst.value, s.best.value);
  if (r.equality) r.note = "equality case: g is a half-plane automorphism";
  return r;
}

VerificationReport check_julia(const SelfMap& g, double beta, const GridOptions& grid) {
  require(g.model() == Model::upper_half_plane, "julia: half-plane map required");
  require(beta > 0.0 && std::isfinite(beta), "julia: multiplier must be positive");
  require(std::abs(g(0.0)) <= 1e-9, "julia: 0 is not a boundary fixed point");
  const std::vector<Complex> pts = halfplane_grid(grid.samples, grid.seed);
  auto margin = [&](std::size_t i) {
    const Complex z = pts[i], gz = g(z);
    return beta * gz.imag() / std::norm(gz) - z.imag() / std::norm(z);
  };
  auto reciprocal = [&](std::size_t i) {
    const Complex z = pts[i];
    return (1.0 / (beta * z)).imag() - (1.0 / g(z)).imag();
  };
  const Sweep s = sweep(pts.size(), margin, grid.exec);
  const Extremum alt = min_over(pts.size(), reciprocal, grid.exec);

  VerificationReport r = make_report("julia", grid.samples, grid.seed);
  r.witness = pts[s.worst.index];
  r.details["beta"] = beta;
  r.details["reciprocal_form_margin"] = alt.value;
  finish(r, s.worst.value, s.best.value);
  // The two forms differ by the positive factor beta, so they pass or fail together.
  const bool alt_pass = alt.value >= -tol::margin / beta;
  if (alt_pass != r.pass) {
    r.note = "reciprocal form disagrees with the direct form";
    r.pass = false;
    r.status = "fail";
  } else if (r.equality) {
    r.note = "equality case: g is a Mobius transformation";
  }
  return r;
}

VerificationReport check_julia_wolff_disk(const SelfMap& f, const GridOptions& grid) {
  require(f.model() == Model::disk, "julia-wolff-disk: disk map required");
  require(std::abs(f(1.0) - 1.0) <= 1e-9, "julia-wolff-disk: f(1) != 1");
  const double d1 = boundary_multiplier(f, 1.0);
  const std::vector<Complex> pts = disk_grid(grid.samples, grid.seed);
  auto margin = [&](std::size_t i) {
    const Complex z = pts[i], fz = f(z);
    const double horo_z = (1.0 - std::norm(z)) / std::norm(1.0 - z);
    const double horo_f = (1.0 - std::norm(fz)) / std::norm(1.0 - fz);
    return d1 - horo_z / horo_f;
  };
  const Sweep s = sweep(pts.size(), margin, grid.exec);
  VerificationReport r = make_report("julia-wolff-disk", grid.samples, grid.seed);
  r.witness = pts[s.worst.index];
  r.details["derivative_at_1"] = d1;
  finish(r, s.worst.value, s.best.value);
  if (r.equality) r.note = "equality case: f maps every horocycle at 1 onto a horocycle";
  return r;
}

VerificationReport check_jack(const SelfMap& f, int scan) {
  require(f.model() == Model::disk, "jack: disk map required");
  require(scan >= 64, "jack: boundary scan needs at least 64 points");
  require(std::abs(f(0.0)) <= 1e-12, "jack: f(0) != 0");
  const double h = 2.0 * M_PI / scan;
  auto modulus = [&](double t) { return std::abs(f(std::polar(1.0, t))); };
  std::vector<double> m(scan);
  for (int k = 0; k < scan; ++k) m[k] = modulus(h * k);
  const double peak = *std::max_element(m.begin(), m.end());
  require(peak > 0.0, "jack: f vanishes identically on the boundary");

  // Every scan point within 1e-12 of the peak is a maximum; refine isolated ones by golden section.
  std::vector<double> maxima;
  for (int k = 0; k < scan; ++k) {
    if (m[k] < peak - 1e-12) continue;
    const double prev = m[(k + scan - 1) % scan], next = m[(k + 1) % scan];
    const bool plateau = prev >= peak - 1e-12 && next >= peak - 1e-12;
    if (plateau) {
      maxima.push_back(h * k);
      continue;
    }
    double lo = h * (k - 1), hi = h * (k + 1);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
    double mc = modulus(c), md = modulus(d);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      if (mc >= md) hi = d, d = c, md = mc, c = hi - invphi * (hi - lo), mc = modulus(c);
      else lo = c, c = d, mc = md, d = lo + invphi * (hi - lo), md = modulus(d);
    }
    double t = mc >= md ? c : d;
    // |f| is flat at the peak, so golden section leaves t off by about sqrt(eps). Im(alpha f'/f) is
    // minus the t-derivative of log|f| and has a simple zero there.
    auto slope = [&](double x) {
      const Complex a = std::polar(1.0, x);
      const auto [fa, dfa] = f.value_and_derivative(a);
      return (a * dfa / fa).imag();
    };
    for (double delta = 1e-8; delta <= 1e-4; delta *= 10.0) {
      double a = t - delta, b = t + delta, sa = slope(a);
      if (!(sa < 0.0 && slope(b) > 0.0)) continue;
      for (int it = 0; it < 100 && b - a > 1e-16; ++it) {
        const double mid = 0.5 * (a + b), sm = slope(mid);
        if (sm < 0.0) a = mid, sa = sm;
        else b = mid;
      }
      t = 0.5 * (a + b);
      break;
    }
    maxima.push_back(t);
  }
  // Ties are reported by smallest angle.
  for (double& t : maxima) t = t < 0.0 ? t + 2.0 * M_PI : std::fmod(t, 2.0 * M_PI);
  std::sort(maxima.begin(), maxima.end());

  VerificationReport r = make_report("jack", static_cast<int>(maxima.size()), 0);
  double worst = std::numeric_limits<double>::infinity(), best = -worst;
  double worst_quantity = 0.0;
  for (double t : maxima) {
    const Complex alpha = std::polar(1.0, t);
    const auto [fa, dfa] = f.value_and_derivative(alpha);
    const Complex q = alpha * dfa / fa;
    const double margin = std::min(q.real() - 1.0, -std::abs(q.imag()));
    if (margin < worst) worst = margin, r.witness = alpha, worst_quantity = q.real();
    best = std::max(best, q.real() - 1.0);
  }
  const Complex alpha = r.witness;
  r.details["quantity"] = worst_quantity;
  r.details["maxima"] = static_cast<double>(maxima.size());
  r.details["rescaled_quantity"] = rescale_at(f, alpha).derivative(1.0).real();
  finish(r, worst, best);
  if (r.equality) r.note = "equality case: f is a rotation";
  return r;
}

VerificationReport check_unkelbach(const SelfMap& f) {
  require(f.model() == Model::disk, "unkelbach: disk map required");
  require(std::abs(f(0.0)) <= 1e-9, "unkelbach: f(0) != 0");
  require(std::abs(f(1.0) - 1.0) <= 1e-9, "unkelbach: f(1) != 1");
  const double d1 = boundary_multiplier(f, 1.0);
  const double d0 = std::abs(f.derivative(0.0));
  VerificationReport r = make_report("unkelbach", 1, 0);
  r.witness = 1.0;
  r.details["derivative_at_1"] = d1;
  r.details["derivative_at_0"] = d0;
  r.details["bound"] = 2.0 / (1.0 + d0);
  r.details["julia_margin"] = d1 - 1.0;
  const double margin = d1 - 2.0 / (1.0 + d0);
  finish(r, margin, margin);
  return r;
}

VerificationReport check_boundary_product(const SelfMap& f, Complex alpha1, Complex alpha2) {
  require(f.model() == Model::disk, "boundary-product: disk map required");
  for (Complex a : {alpha1, alpha2})
    require(on_unit_circle(a) && std::abs(f(a) - a) <= 1e-9,
            "boundary-product: " + format_complex(a) + " is not a boundary fixed point");
  require(std::abs(alpha1 - alpha2) > 1e-9, "boundary-product: the two points coincide");
  const double m1 = boundary_multiplier(f, alpha1), m2 = boundary_multiplier(f, alpha2);
  VerificationReport r = make_report("boundary-product", 1, 0);
  r.witness = alpha1;
  r.witness2 = alpha2;
  r.details["multiplier1"] = m1;
  r.details["multiplier2"] = m2;
  r.details["product"] = m1 * m2;
  r.details["strict"] = is_disk_automorphism(f) ? 0.0 : 1.0;
  const double margin = m1 * m2 - 1.0;
  finish(r, margin, margin);
  if (r.equality) r.note = "equality case: f is a disk automorphism";
  return r;
}

VerificationReport check_wolff_monotonicity(const SelfMap& g, double x, const std::vector<double>& ys) {
  require(g.model() == Model::upper_half_plane, "wolff-monotonicity: half-plane map required");
  require(ys.size() >= 2, "wolff-monotonicity: need at least two heights");
  for (std::size_t k = 0; k < ys.size(); ++k) {
    require(ys[k] > 0.0, "wolff-monotonicity: heights must be positive");
    if (k > 0) require(ys[k] < ys[k - 1], "wolff-monotonicity: heights must decrease strictly");
  }
  std::vector<double> ratio(ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k) ratio[k] = g(Complex(x, ys[k])).imag() / ys[k];
  double worst = std::numeric_limits<double>::infinity(), best = -worst;
  std::size_t at = 1;
  for (std::size_t k = 1; k < ys.size(); ++k) {
    const double step = ratio[k] - ratio[k - 1];
    if (step < worst) worst = step, at = k;
    best = std::max(best, step);
  }
  VerificationReport r = make_report("wolff-monotonicity", static_cast<int>(ys.size()), 0);
  r.witness = Complex(x, ys[at]);
  r.witness2 = Complex(x, ys[at - 1]);
  r.details["first_ratio"] = ratio.front();
  r.details["last_ratio"] = ratio.back();
  finish(r, worst, best);
  if (r.equality) r.note = "ratio constant along the vertical";
  return r;
}

TangencyResult tangency_order(const SelfMap& f, Complex alpha, int max_order) {
  require(f.model() == Model::disk, "tangency_order: disk map required");
  require(max_order >= 4, "tangency_order: max_order must be at least 4");
  require(on_unit_circle(alpha) && std::abs(f(alpha) - alpha) <= 1e-9,
          "tangency_order: " + format_complex(alpha) + " is not a boundary fixed point");
  const Complex a = alpha / std::abs(alpha);
  TangencyResult out;
  const Complex d1 = f.derivative(a);
  if (std::abs(boundary_multiplier(f, a) - 1.0) > 1e-6) {
    out.order = 1;
    out.slope = 1.0;
    out.coefficients = {d1 - 1.0};
    out.leading_coefficient = d1 - 1.0;
    return out;
  }

  // Radial samples above the rounding floor of f(z) - z.
  constexpr double floor = 1e-13;
  std::vector<double> lx, ly;
  std::vector<Complex> diff, offset;
  for (int j = 4; j <= 16; ++j) {
    const Complex z = (1.0 - std::ldexp(1.0, -j)) * a;
    const Complex d = f(z) - z;
    if (std::abs(d) <= floor) continue;
    diff.push_back(d);
    offset.push_back(z - a);
    lx.push_back(std::log(std::abs(z - a)));
    ly.push_back(std::log(std::abs(d)));
  }

  auto identity_or_violation = [&](int order_seen) {
    if (is_identity(f)) {
      out.order = max_order;
      out.identity = true;
      return out;
    }
    throw BurnsKrantzViolation("map agrees with the identity to order " + std::to_string(order_seen) + " at " +
                               format_complex(a) + " but is not the identity");
  };
  if (lx.size() < 3) return identity_or_violation(max_order);

  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) sxy += (lx[k] - mx) * (ly[k] - my), sxx += (lx[k] - mx) * (lx[k] - mx);
  out.slope = sxy / sxx;
  const int order = std::clamp(static_cast<int>(std::lround(out.slope)), 2, max_order);
  if (order >= 4) return identity_or_violation(order);
  out.order = order;
  for (std::size_t k = 0; k < diff.size(); ++k) out.coefficients.push_back(diff[k] / std::pow(offset[k], order));
  out.leading_coefficient = out.coefficients.back();
  return out;
}

std::pair<double, double> harnack_bounds(double u0, double r, double rho) {
  if (!(u0 > 0.0)) throw DomainError("harnack_bounds: center value must be positive");
  if (!(r > 0.0) || !(rho >= 0.0) || !(rho < r)) throw DomainError("harnack_bounds: need 0 <= rho < r");
  return {u0 * (r - rho) / (r + rho), u0 * (r + rho) / (r - rho)};
}

namespace {

VerificationReport skipped(const std::string& name, const std::string& why) {
  VerificationReport r;
  r.name = name;
  r.status = "skipped: precondition";
  r.pass = true;
  r.note = why;
  return r;
}

struct Context {
  const SelfMap& f;
  GridOptions grid;
  AnalysisReport analysis;
  std::vector<Complex> boundary;  // boundary fixed points, Denjoy-Wolff first
  std::vector<double> multipliers;
};

Context make_context(const SelfMap& f, const GridOptions& grid) {
  Context ctx{f, grid, analyze(f, {default_scan_resolution, grid.exec}), {}, {}};
  if (ctx.analysis.identity) {
    ctx.boundary = {1.0, -1.0};
    ctx.multipliers = {1.0, 1.0};
    return ctx;
  }
  std::vector<FixedPointRecord> recs;
  for (const auto& r : ctx.analysis.fixed_points)
    if (r.kind == FixedPointKind::boundary) recs.push_back(r);
  std::stable_partition(recs.begin(), recs.end(), [](const auto& r) { return r.is_denjoy_wolff; });
  for (const auto& r : recs) ctx.boundary.push_back(r.location), ctx.multipliers.push_back(r.multiplier.real());
  return ctx;
}

VerificationReport run_one(const Context& ctx, const std::string& name) {
  const SelfMap& f = ctx.f;
  if (name == "schwarz") {
    if (std::abs(f(0.0)) > 1e-12) return skipped(name, "f(0) != 0");
    return check_schwarz(f, ctx.grid);
  }
  if (name == "schwarz-pick") return check_schwarz_pick(f, ctx.grid);
  if (name == "uhp-pick") return check_uhp_pick(conjugate_to_halfplane(f), ctx.grid);
  if (name == "julia") {
    if (ctx.boundary.empty()) return skipped(name, "no boundary fixed point");
    VerificationReport r = check_julia(halfplane_at(f, ctx.boundary[0]), ctx.multipliers[0], ctx.grid);
    r.note = "base point " + format_complex(ctx.boundary[0]) + (r.note.empty() ? "" : "; " + r.note);
    return r;
  }
  if (name == "julia-wolff-disk") {
    if (std::abs(f(1.0) - 1.0) <= 1e-9) return check_julia_wolff_disk(f, ctx.grid);
    if (ctx.boundary.empty()) return skipped(name, "no boundary fixed point");
    VerificationReport r = check_julia_wolff_disk(rotate_to_one(f, ctx.boundary[0]), ctx.grid);
    r.note = "rotated so that " + format_complex(ctx.boundary[0]) + " sits at 1";
    return r;
  }
  if (name == "jack") {
    if (std::abs(f(0.0)) > 1e-12) return skipped(name, "f(0) != 0");
    return check_jack(f);
  }
  if (name == "unkelbach") {
    if (std::abs(f(0.0)) > 1e-9) return skipped(name, "f(0) != 0");
    if (std::abs(f(1.0) - 1.0) > 1e-9) return skipped(name, "f(1) != 1");
    return check_unkelbach(f);
  }
  if (name == "boundary-product") {
    if (ctx.boundary.size() < 2) return skipped(name, "fewer than two boundary fixed points");
    VerificationReport worst;
    bool first = true;
    for (std::size_t i = 0; i < ctx.boundary.size(); ++i)
      for (std::size_t j = i + 1; j < ctx.boundary.size(); ++j) {
        VerificationReport r = check_boundary_product(f, ctx.boundary[i], ctx.boundary[j]);
        if (first || r.worst_margin < worst.worst_margin) worst = r;
        first = false;
      }
    return worst;
  }
  if (name == "wolff-monotonicity") {
    std::vector<double> ys;
    for (int k = 0; k <= 80; ++k) ys.push_back(std::ldexp(1.0, 2) * std::pow(2.0, -k / 4.0));
    if (ctx.boundary.empty()) return check_wolff_monotonicity(conjugate_to_halfplane(f), 0.0, ys);
    return check_wolff_monotonicity(halfplane_at(f, ctx.boundary[0]), 0.0, ys);
  }
  throw DomainError("unknown inequality '" + name + "'");
}

}  // namespace

std::vector<VerificationReport> verify(const SelfMap& f, const std::string& which, const GridOptions& grid) {
  if (f.model() != Model::disk) throw ModelMismatch("verify expects a disk map");
  const auto& names = inequality_names();
  if (which != "all" && std::find(names.begin(), names.end(), which) == names.end())
    throw DomainError("unknown inequality '" + which + "'");
  const Context ctx = make_context(f, grid);
  std::vector<VerificationReport> out;
  for (const auto& name : names) {
    if (which != "all" && which != name) continue;
    try {
      out.push_back(run_one(ctx, name));
    } catch (const PreconditionError& e) {
      out.push_back(skipped(name, e.what()));
    }
  }
  return out;
}

}  // namespace hypdisk
