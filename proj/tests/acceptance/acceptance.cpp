// Acceptance checks: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../battery.hpp"
#include "hypdisk/cli.hpp"
#include "hypdisk/fixedpoints.hpp"
#include "hypdisk/geometry.hpp"
#include "hypdisk/render.hpp"
#include "hypdisk/serialize.hpp"
#include "hypdisk/verifiers.hpp"

using namespace hypdisk;

namespace {

const Complex I(0.0, 1.0);
const std::string data_dir = std::string(HYPDISK_TEST_DATA);

// Collects failed conditions for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::vector<FixedPointRecord> example_records;

// Match each oracle point to the nearest reported point; returns the worst distance.
double match(const std::vector<Complex>& oracle, const std::vector<Complex>& got) {
  double worst = 0.0;
  for (Complex z : oracle) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex g : got) best = std::min(best, std::abs(g - z));
    worst = std::max(worst, best);
  }
  return worst;
}

void criterion1(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string path = data_dir + "/data/example.json";
  const char* argv[] = {"hypdisk", "analyze", "--map", path.c_str()};
  std::ostringstream out, err;
  const int code = cli::run(4, argv, out, err);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(code == 0, "analyze exit code " + std::to_string(code));
  if (code != 0) return;

  const nlohmann::json j = nlohmann::json::parse(out.str());
  std::vector<Complex> locs;
  std::vector<double> mults;
  int interior = 0;
  Complex dw(NAN, NAN);
  for (const auto& p : j["fixed_points"]) {
    FixedPointRecord r;
    r.location = {p["location"]["re"].get<double>(), p["location"]["im"].get<double>()};
    r.multiplier = {p["multiplier"]["re"].get<double>(), p["multiplier"]["im"].get<double>()};
    r.kind = p["kind"] == "interior" ? FixedPointKind::interior : FixedPointKind::boundary;
    r.is_denjoy_wolff = p["is_denjoy_wolff"].get<bool>();
    example_records.push_back(r);
    if (r.kind == FixedPointKind::interior) ++interior;
    locs.push_back(r.location);
    mults.push_back(r.multiplier.real());
    if (r.is_denjoy_wolff) dw = r.location;
  }
  const double s7 = std::sqrt(7.0);
  const std::vector<Complex> oracle{-1.0, 1.0, Complex(9.0, 5.0 * s7) / 16.0, Complex(9.0, -5.0 * s7) / 16.0};
  const std::vector<double> oracle_mult{0.6, 15.0, 2.4, 2.4};
  c.expect(locs.size() == 4, "expected 4 fixed points, got " + std::to_string(locs.size()));
  c.expect(interior == 0, "unexpected interior fixed point");
  const double loc_err = match(oracle, locs);
  c.expect(loc_err <= 1e-9, "location error " + sci(loc_err));
  double mult_err = 0.0;
  for (std::size_t k = 0; k < oracle.size(); ++k)
    for (std::size_t m = 0; m < locs.size(); ++m)
      if (std::abs(locs[m] - oracle[k]) <= 1e-9) mult_err = std::max(mult_err, std::abs(mults[m] - oracle_mult[k]));
  c.expect(mult_err <= 1e-9, "multiplier error " + sci(mult_err));
  c.expect(std::abs(dw + 1.0) <= 1e-9, "Denjoy-Wolff point not at -1");
  c.expect(seconds < 1.0, "runtime " + std::to_string(seconds) + " s");
  c.detail = "location err " + sci(loc_err) + ", multiplier err " + sci(mult_err) + ", " + sci(seconds) + " s";
}

void criterion2(Check& c) {
  const AnalysisReport rep = analyze(catalog::cube());
  int interior = 0;
  std::vector<Complex> boundary;
  for (const auto& p : rep.fixed_points) {
    if (p.kind == FixedPointKind::interior) {
      ++interior;
      c.expect(std::abs(p.location) <= 1e-12, "interior point not at 0");
      c.expect(std::abs(p.multiplier) <= 1e-12, "interior multiplier not 0");
      c.expect(p.is_denjoy_wolff, "0 is not marked Denjoy-Wolff");
    } else {
      boundary.push_back(p.location);
      c.expect(std::abs(p.multiplier.real() - 3.0) <= 1e-9, "boundary derivative " + std::to_string(p.multiplier.real()));
      c.expect(p.multiplier.real() >= 1.0, "boundary derivative below 1");
    }
  }
  c.expect(interior == 1, "expected one interior fixed point");
  c.expect(boundary.size() == 2 && match({1.0, -1.0}, boundary) <= 1e-9, "boundary fixed points differ from {1, -1}");
  c.detail = "interior 0 with multiplier 0, boundary {1, -1} with derivative 3";
}

void criterion3(Check& c) {
  c.expect(example_records.size() == 4, "criterion 1 records unavailable");
  if (example_records.size() != 4) return;
  auto mult_at = [&](Complex z) {
    for (const auto& r : example_records)
      if (std::abs(r.location - z) <= 1e-9) return r.multiplier.real();
    return std::numeric_limits<double>::quiet_NaN();
  };
  const Complex a = Complex(9.0, 5.0 * std::sqrt(7.0)) / 16.0;
  const double p1 = mult_at(-1.0) * mult_at(1.0), p2 = mult_at(a) * mult_at(std::conj(a));
  c.expect(std::abs(p1 - 9.0) <= 1e-9 && p1 >= 1.0, "(3/5)(15) = " + std::to_string(p1));
  c.expect(std::abs(p2 - 5.76) <= 1e-9 && p2 >= 1.0, "(12/5)^2 = " + std::to_string(p2));
  const VerificationReport eq = check_boundary_product(catalog::hyperbolic_automorphism(), 1.0, -1.0);
  const double p3 = eq.details.at("product");
  c.expect(std::abs(p3 - 1.0) <= 1e-9, "automorphism product " + std::to_string(p3));
  c.expect(eq.pass, "automorphism product check failed");
  c.detail = "products " + std::to_string(p1) + ", " + std::to_string(p2) + ", automorphism " + sci(std::abs(p3 - 1.0)) +
             " from 1";
}

// Disk map fixing 0 and 1 built from f: move f(0) to 0, then rotate a unimodular boundary value to 1.
SelfMap normalized_at_zero_and_one(const SelfMap& f, Complex alpha) {
  const SelfMap F = compose(catalog::automorphism(f(0.0)), f);
  const Complex beta = F(alpha);
  // G(z) = conj(beta) F(alpha z)
  const SelfMap inner(spec::mobius(alpha, 0.0, 0.0, 1.0));
  const SelfMap outer(spec::mobius(std::conj(beta), 0.0, 0.0, 1.0));
  return compose(outer, compose(F, inner));
}

void criterion4(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const GridOptions grid{256, 42, Execution::parallel};
  std::vector<double> ys;
  for (int k = 0; k <= 60; ++k) ys.push_back(std::pow(2.0, 2.0 - k / 4.0));
  const auto maps = battery::maps();
  int runs = 0, equality_cases = 0;
  double worst = std::numeric_limits<double>::infinity();
  auto record = [&](const std::string& map, const VerificationReport& r) {
    ++runs;
    worst = std::min(worst, r.worst_margin);
    c.expect(r.pass && r.worst_margin >= -1e-9, map + "/" + r.name + " margin " + sci(r.worst_margin));
  };
  for (const auto& m : maps) {
    const SelfMap& f = m.f;
    const AnalysisReport rep = analyze(f);
    std::vector<std::pair<Complex, double>> bfp;
    for (const auto& p : rep.fixed_points)
      if (p.kind == FixedPointKind::boundary) bfp.emplace_back(p.location, p.multiplier.real());
    std::stable_sort(bfp.begin(), bfp.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    const Complex alpha = bfp.empty() ? Complex(1.0) : bfp.front().first;

    record(m.name, check_schwarz_pick(f, grid));
    record(m.name, check_uhp_pick(conjugate_to_halfplane(f), grid));
    const SelfMap G = normalized_at_zero_and_one(f, alpha);
    record(m.name, check_jack(G));
    record(m.name, check_unkelbach(G));
    if (!bfp.empty()) {
      const SelfMap g = halfplane_at(f, alpha);
      record(m.name, check_julia(g, bfp.front().second, grid));
      record(m.name, check_julia_wolff_disk(rotate_to_one(f, alpha), grid));
      record(m.name, check_wolff_monotonicity(g, 0.0, ys));
    } else {
      // No boundary fixed point (elliptic rotation): use the identity-normalized map G instead.
      record(m.name, check_julia(halfplane_at(G, 1.0), boundary_multiplier(G, 1.0), grid));
      record(m.name, check_julia_wolff_disk(G, grid));
      record(m.name, check_wolff_monotonicity(halfplane_at(G, 1.0), 0.0, ys));
    }

    if (m.automorphism) {
      const VerificationReport sp = check_schwarz_pick(f, grid), up = check_uhp_pick(conjugate_to_halfplane(f), grid);
      c.expect(sp.equality && std::abs(sp.worst_margin) <= 1e-10, m.name + ": schwarz-pick equality not flagged");
      c.expect(up.equality && std::abs(up.worst_margin) <= 1e-10, m.name + ": uhp-pick equality not flagged");
      equality_cases += 2;
      if (!bfp.empty()) {
        const VerificationReport ju = check_julia(halfplane_at(f, alpha), bfp.front().second, grid);
        const VerificationReport jw = check_julia_wolff_disk(rotate_to_one(f, alpha), grid);
        c.expect(ju.equality && std::abs(ju.worst_margin) <= 1e-10, m.name + ": julia equality not flagged");
        c.expect(jw.equality && std::abs(jw.worst_margin) <= 1e-10, m.name + ": julia-wolff equality not flagged");
        equality_cases += 2;
      }
    }
  }
  const VerificationReport rot = check_jack(catalog::rotation(0.25));
  c.expect(rot.equality && std::abs(rot.worst_margin) <= 1e-10, "rotation: jack equality not flagged");
  const VerificationReport sch = check_schwarz(catalog::rotation(0.25), grid);
  c.expect(sch.equality && std::abs(sch.worst_margin) <= 1e-10, "rotation: schwarz equality not flagged");
  const VerificationReport mob = check_julia(SelfMap(spec::mobius(1.0, 0.0, 1.0, 1.0, Model::upper_half_plane)), 1.0, grid);
  c.expect(mob.equality && std::abs(mob.worst_margin) <= 1e-10, "z/(1+z): julia equality not flagged");
  equality_cases += 3;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(seconds < 10.0, "runtime " + std::to_string(seconds) + " s");
  c.detail = std::to_string(maps.size()) + " maps x " + std::to_string(grid.samples) + " samples, " +
             std::to_string(runs) + " checks, worst margin " + sci(worst) + ", " + std::to_string(equality_cases) +
             " equality cases";
}

void criterion5(Check& c) {
  const TangencyResult t = tangency_order(catalog::cubic_tangent(), 1.0);
  c.expect(t.order == 3, "order " + std::to_string(t.order));
  c.expect(std::abs(t.leading_coefficient - Complex(-0.25)) <= 0.01, "coefficient " + std::to_string(t.leading_coefficient.real()));
  int violations = 0, validated = 0;
  std::vector<int> orders;
  for (const SelfMap& f : battery::tangent_at_one(20, 42)) {
    if (!validate_selfmap(f).passed) continue;
    ++validated;
    c.expect(std::abs(f(1.0) - 1.0) <= 1e-9 && std::abs(boundary_multiplier(f, 1.0) - 1.0) <= 1e-6,
             "random map lacks a multiplier-1 fixed point at 1");
    try {
      const TangencyResult r = tangency_order(f, 1.0);
      if (!r.identity && r.order >= 4) ++violations;
      orders.push_back(r.identity ? 0 : r.order);
    } catch (const BurnsKrantzViolation&) {
      ++violations;
    }
  }
  c.expect(validated == 20, "only " + std::to_string(validated) + " random maps validated");
  c.expect(violations == 0, std::to_string(violations) + " violations");
  const auto o2 = std::count(orders.begin(), orders.end(), 2), o3 = std::count(orders.begin(), orders.end(), 3);
  c.detail = "order 3, coefficient " + std::to_string(t.leading_coefficient.real()) + "; " + std::to_string(validated) +
             " random maps (" + std::to_string(o2) + " of order 2, " + std::to_string(o3) + " of order 3), 0 violations";
  if (violations) c.detail = std::to_string(violations) + " violations";
}

void criterion6(Check& c) {
  const auto [lo, hi] = harnack_bounds(1.0, 1.0, 0.5);
  c.expect(lo == 1.0 / 3.0 && hi == 3.0, "bounds at (1, 1, 1/2) are not exactly (1/3, 3)");
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int samples = 0;
  for (double r : {1.0, 2.5}) {
    for (double frac : {0.25, 0.5, 0.75}) {
      const double rho = frac * r;
      // Poisson kernel of the disk |z| < r with its pole at r e^{i theta}, scaled so u(0) = u0.
      const double theta = 2.0 * M_PI * u(rng), u0 = 0.5 + u(rng);
      const Complex pole = std::polar(r, theta);
      const auto [blo, bhi] = harnack_bounds(u0, r, rho);
      for (int k = 0; k < 256; ++k) {
        const Complex z = std::polar(rho, 2.0 * M_PI * k / 256);
        const double val = u0 * ((pole + z) / (pole - z)).real();
        c.expect(val >= blo * (1.0 - 1e-14) && val <= bhi * (1.0 + 1e-14), "value outside bounds");
        ++samples;
      }
    }
  }
  c.detail = "bounds (1/3, 3) exact; " + std::to_string(samples) + " kernel samples inside";
}

void criterion7(Check& c) {
  double worst = 0.0;
  int boundary_cases = 0;
  for (const auto& m : battery::maps()) {
    try {
      const DenjoyWolffResult w = denjoy_wolff(m.f, DenjoyWolffMethod::wolff);
      const DenjoyWolffResult it = denjoy_wolff(m.f, DenjoyWolffMethod::iterate);
      const double gap = std::abs(w.record.location - it.record.location);
      worst = std::max(worst, gap);
      c.expect(gap <= 1e-6, m.name + ": methods differ by " + sci(gap));
      if (w.record.kind == FixedPointKind::boundary) {
        ++boundary_cases;
        const auto& a = w.approximant_moduli;
        bool increasing = a.size() >= 2;
        for (std::size_t k = 1; k < a.size(); ++k) increasing = increasing && a[k] > a[k - 1];
        c.expect(increasing, m.name + ": approximant moduli not increasing");
        // Parabolic cases approach the circle only like n^(-1/2); ask for a steadily shrinking gap.
        c.expect(a.size() > 10 && 1.0 - a.back() < 0.125 * (1.0 - a[a.size() - 11]),
                 m.name + ": approximants stay away from the circle");
      }
    } catch (const std::exception& e) {
      c.expect(false, m.name + ": " + e.what());
    }
  }
  c.detail = "worst wolff/iterate gap " + sci(worst) + ", " + std::to_string(boundary_cases) + " boundary cases escaping";
}

void criterion8(Check& c) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto disk = [&](double radius) { return std::polar(radius * std::sqrt(u(rng)), 2.0 * M_PI * u(rng)); };
  auto uhp = [&] { return Complex(10.0 * u(rng) - 5.0, std::exp(6.0 * u(rng) - 4.0)); };
  double e2 = 0.0, e6 = 0.0, inv = 0.0, swp = 0.0, circ = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Complex zeta = disk(0.99), z = disk(1.0);
    const DiskAutomorphism phi(zeta);
    const Complex w = phi(z);
    e2 = std::max(e2, std::abs(std::norm(w) + (1.0 - std::norm(zeta)) * (1.0 - std::norm(z)) /
                                                  std::norm(1.0 - std::conj(zeta) * z) - 1.0));
    inv = std::max(inv, std::abs(phi(w) - z));

    const Complex b = uhp(), x = uhp();
    e6 = std::max(e6, std::abs(std::norm(CayleyMap(b)(x)) + 4.0 * x.imag() * b.imag() / std::norm(x - std::conj(b)) - 1.0));

    const Complex eta = disk(0.95), xi = disk(0.95);
    const MobiusTransform t = swap_points(eta, xi);
    swp = std::max({swp, std::abs(t(eta) - xi), std::abs(t(xi) - eta), std::abs(t(t(z)) - z)});
  }
  for (int k = 0; k < 200; ++k) {
    const Complex zeta = disk(0.95);
    const double rho = 0.01 + 0.98 * u(rng);
    const EuclideanCircle e = to_euclidean(NonEuclideanCircle(zeta, rho));
    const Complex alpha = std::polar(1.0, 2.0 * M_PI * u(rng));
    const double R = 0.01 + 0.98 * u(rng);
    const Horocycle h = Horocycle::with_radius(alpha, R);
    const EuclideanCircle hc = to_euclidean(h);
    for (int j = 0; j < 32; ++j) {
      const double t = 2.0 * M_PI * (j + 0.5) / 32;
      circ = std::max(circ, std::abs(pseudo_distance(e.point_at(t), zeta) - rho));
      const Complex p = hc.center + std::polar(hc.radius, std::arg(alpha) + 0.1 + (2.0 * M_PI - 0.2) * j / 31);
      circ = std::max(circ, std::abs(horocycle_level(alpha, p) - h.level) / std::max(1.0, h.level));
    }
  }
  c.expect(e2 <= 1e-13, "identity (2) error " + sci(e2));
  c.expect(e6 <= 1e-13, "identity (6) error " + sci(e6));
  c.expect(inv <= 1e-12, "involution error " + sci(inv));
  c.expect(swp <= 1e-12, "swap error " + sci(swp));
  c.expect(circ <= 1e-9, "circle equation error " + sci(circ));
  c.detail = "max errors: modulus identities " + sci(std::max(e2, e6)) + ", involution " + sci(inv) + ", swap " +
             sci(swp) + ", circles " + sci(circ);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion9(Check& c) {
  const std::string dir = data_dir + "/golden/";
  struct Fig {
    std::string file;
    std::function<Scene()> make;
  };
  const std::vector<Fig> figs{
      {"fig1_circles.svg", [] { return render_circles(polar_deg(0.75, 30.0), {0.25, 0.5, 0.75, 0.875}); }},
      {"fig2_julia_disks.svg", [] { return render_julia_disks(0.5 * I, Complex(2.0, 1.2), 0.40825); }},
      {"fig4_horocycles.svg", [] { return render_horocycles(30.0, {2.0 / 3.0, 0.5, 1.0 / 3.0, 1.0 / 6.0}); }},
  };
  for (const auto& f : figs) {
    const std::string golden = slurp(dir + f.file);
    c.expect(!golden.empty(), f.file + " missing");
    const std::string a = to_svg(f.make()), b = to_svg(f.make());
    c.expect(a == b, f.file + " not byte-stable");
    c.expect(a == golden, f.file + " differs from golden");
    c.expect(within_viewport(f.make()), f.file + " leaves the viewport");
  }
  c.detail = "3 SVGs byte-identical to goldens";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    void (*run)(Check&);
  };
  const Criterion all[] = {
      {1, "worked example fixed points and multipliers", criterion1},
      {2, "z^3 fixed points", criterion2},
      {3, "boundary product bound", criterion3},
      {4, "inequality suite on the battery", criterion4},
      {5, "boundary tangency order", criterion5},
      {6, "Harnack bounds", criterion6},
      {7, "Denjoy-Wolff method agreement", criterion7},
      {8, "geometry identities", criterion8},
      {9, "figure goldens", criterion9},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& cr : all) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("criterion %d %s: %s (%.0f ms) %s\n", cr.id, ok ? "PASS" : "FAIL", cr.title, ms, c.detail.c_str());
    for (std::size_t k = 0; k < c.failures.size() && k < 10; ++k) std::printf("    %s\n", c.failures[k].c_str());
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 9 criteria passed in %.2f s\n", 9 - failed, total);
  return failed ? 1 : 0;
}
