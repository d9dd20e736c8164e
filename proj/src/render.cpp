#include "hypdisk/render.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace hypdisk {

const char* to_string(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::circle: return "circle";
    case PrimitiveKind::dot: return "dot";
    case PrimitiveKind::segment: return "segment";
    case PrimitiveKind::polyline: return "polyline";
    case PrimitiveKind::label: return "label";
  }
  return "?";
}

namespace {

constexpr double margin_px = 30.0;
constexpr double dot_px = 3.0;

int add(Panel& p, Primitive prim) {
  p.items.push_back(std::move(prim));
  return static_cast<int>(p.items.size()) - 1;
}

int circle(Panel& p, Complex center, double radius, bool dashed = false, std::string role = {}) {
  Primitive c;
  c.kind = PrimitiveKind::circle;
  c.a = center;
  c.radius = radius;
  c.dashed = dashed;
  c.role = std::move(role);
  return add(p, std::move(c));
}

int dot(Panel& p, Complex z) {
  Primitive d;
  d.kind = PrimitiveKind::dot;
  d.a = z;
  return add(p, std::move(d));
}

int segment(Panel& p, Complex from, Complex to, bool dashed = false) {
  Primitive s;
  s.kind = PrimitiveKind::segment;
  s.a = from;
  s.b = to;
  s.dashed = dashed;
  return add(p, std::move(s));
}

void label(Panel& p, int attached, Complex at, std::string text) {
  Primitive l;
  l.kind = PrimitiveKind::label;
  l.a = at;
  l.text = std::move(text);
  l.attached = attached;
  add(p, std::move(l));
}

Panel disk_panel() {
  Panel p;
  circle(p, 0.0, 1.0, true, "unit-circle");
  label(p, dot(p, 0.0), 0.0, "0");
  label(p, dot(p, 1.0), 1.0, "1");
  return p;
}

// Uniform scale and centering so the model bounding box fills the panel less the margin.
void fit(Panel& p) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  auto grow = [&](Complex z, double r) {
    xmin = std::min(xmin, z.real() - r), xmax = std::max(xmax, z.real() + r);
    ymin = std::min(ymin, z.imag() - r), ymax = std::max(ymax, z.imag() + r);
  };
  for (const auto& it : p.items) {
    switch (it.kind) {
      case PrimitiveKind::circle: grow(it.a, it.radius); break;
      case PrimitiveKind::segment: grow(it.a, 0.0), grow(it.b, 0.0); break;
      case PrimitiveKind::polyline:
        for (Complex z : it.points) grow(z, 0.0);
        break;
      default: grow(it.a, 0.0);
    }
  }
  const double w = std::max(xmax - xmin, 1e-9), h = std::max(ymax - ymin, 1e-9);
  const double avail = panel_size - 2.0 * margin_px;
  p.frame.scale = std::min(avail / w, avail / h);
  p.frame.origin_x = panel_size / 2.0 - p.frame.scale * (xmin + xmax) / 2.0;
  p.frame.origin_y = panel_size / 2.0 + p.frame.scale * (ymin + ymax) / 2.0;
}

Scene single(std::string name, Panel p) {
  Scene s;
  s.figure = std::move(name);
  s.panels.push_back(std::move(p));
  return s;
}

// Euclidean center of the hyperbolic disk about x + iy whose Euclidean radius is r.
Complex halfplane_disk_center(Complex z, double r) { return {z.real(), std::sqrt(z.imag() * z.imag() + r * r)}; }

}  // namespace

Scene render_circles(Complex zeta, const std::vector<double>& pseudo_radii) {
  if (!(std::abs(zeta) < 1.0)) throw DomainError("render_circles: center must lie in the open disk");
  Panel p = disk_panel();
  for (double rho : pseudo_radii) {
    const NonEuclideanCircle nc(zeta, rho);
    const EuclideanCircle e = to_euclidean(nc);
    const int k = circle(p, e.center, e.radius, false, "noneuclidean");
    p.items[k].ref = zeta;
    p.items[k].ref_value = rho;
  }
  label(p, dot(p, zeta), zeta, "ζ");
  return single("circles", std::move(p));
}

Scene render_julia_disks(Complex zeta, Complex f_zeta, double r) {
  if (!(zeta.imag() > 0.0) || !(f_zeta.imag() > 0.0))
    throw DomainError("render_julia_disks: both points must lie in the upper half-plane");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("render_julia_disks: radius must be positive");
  const double k = f_zeta.imag() / zeta.imag();
  const double R = r * k;
  const Complex c1 = halfplane_disk_center(zeta, r), c2 = halfplane_disk_center(f_zeta, R);

  Panel p;
  circle(p, c1, r);
  circle(p, c2, R);
  label(p, dot(p, zeta), zeta, "ζ");
  label(p, dot(p, f_zeta), f_zeta, "f(ζ)");
  const int s1 = segment(p, c1, c1 + Complex(0.0, r));
  dot(p, c1);
  label(p, s1, c1 + Complex(0.0, r / 2.0), "r");
  const int s2 = segment(p, c2, c2 + Complex(0.0, R));
  dot(p, c2);
  label(p, s2, c2 + Complex(0.0, R / 2.0), "R");
  label(p, segment(p, zeta.real(), zeta, true), Complex(zeta.real(), zeta.imag() / 2.0), "Im ζ");
  label(p, segment(p, f_zeta.real(), f_zeta, true), Complex(f_zeta.real(), f_zeta.imag() / 2.0), "Im f(ζ)");

  double left = std::min(zeta.real(), f_zeta.real()) - r, right = std::max(zeta.real(), f_zeta.real()) + R;
  if (std::abs(k - 1.0) > 1e-12) {
    // Dilation about p with factor k sends zeta to f(zeta): p + k (zeta - p) = f(zeta).
    const double px = (zeta.real() * f_zeta.imag() - f_zeta.real() * zeta.imag()) / (f_zeta.imag() - zeta.imag());
    const Complex base(px, 0.0);
    label(p, dot(p, base), base, "p");
    segment(p, base, f_zeta, true);
    segment(p, base, c2, true);
    segment(p, base, c2 + Complex(0.0, R), true);
    left = std::min(left, px), right = std::max(right, px);
  }
  segment(p, Complex(left - 0.5, 0.0), Complex(right + 0.5, 0.0));
  fit(p);
  return single("julia-disks", std::move(p));
}

Scene render_inversion(double r, double R, double z_deg, Complex f_z) {
  if (!(r > 0.0) || !(R > r)) throw DomainError("render_inversion: need 0 < r < R");
  if (!(f_z.imag() > 0.0)) throw DomainError("render_inversion: f(z) must lie in the upper half-plane");
  const Complex z = Complex(0.0, r) + polar_deg(r, z_deg);
  if (!(z.imag() > 0.0)) throw DomainError("render_inversion: z must lie in the upper half-plane");
  auto inv = [](Complex w) { return -1.0 / w; };

  Panel left;
  circle(left, Complex(0.0, R), R, false, "horodisk");
  circle(left, Complex(0.0, r), r, false, "horodisk");
  left.items[0].ref_value = R, left.items[1].ref_value = r;
  const double half = std::max(1.0, 1.2 * R);
  segment(left, Complex(-half, 0.0), Complex(half, 0.0));
  label(left, segment(left, Complex(0.0, r), Complex(0.0, 2.0 * r)), Complex(0.0, 1.5 * r), "r");
  dot(left, Complex(0.0, r));
  label(left, segment(left, Complex(0.0, R), Complex(0.0, 2.0 * R)), Complex(0.0, 1.5 * R), "R");
  dot(left, Complex(0.0, R));
  label(left, dot(left, 0.0), 0.0, "0");
  label(left, dot(left, z), z, "z");
  label(left, dot(left, f_z), f_z, "f(z)");
  fit(left);

  Panel right;
  const Complex iz = inv(z), ifz = inv(f_z);
  const double hr = 1.0 / (2.0 * r), hR = 1.0 / (2.0 * R);
  const double span = std::max({1.0, std::abs(iz.real()) + 0.2, std::abs(ifz.real()) + 0.2});
  segment(right, Complex(-span, 0.0), Complex(span, 0.0));
  const int l1 = segment(right, Complex(-span, hr), Complex(span, hr));
  right.items[l1].role = "horodisk-image", right.items[l1].ref_value = r;
  label(right, l1, Complex(span, hr), "1/(2r)");
  const int l2 = segment(right, Complex(-span, hR), Complex(span, hR));
  right.items[l2].role = "horodisk-image", right.items[l2].ref_value = R;
  label(right, l2, Complex(span, hR), "1/(2R)");
  label(right, dot(right, 0.0), 0.0, "0");
  label(right, dot(right, iz), iz, "-1/z");
  label(right, dot(right, ifz), ifz, "-1/f(z)");
  fit(right);
  right.offset_x = panel_size;

  Scene s;
  s.figure = "inversion";
  s.width = 2 * panel_size;
  s.panels.push_back(std::move(left));
  s.panels.push_back(std::move(right));
  return s;
}

Scene render_horocycles(double alpha_deg, const std::vector<double>& radii) {
  const Complex contact = polar_deg(1.0, alpha_deg);
  Panel p = disk_panel();
  for (double R : radii) {
    if (!(R > 0.0 && R < 1.0)) throw DomainError("render_horocycles: radii must lie in (0, 1)");
    const Horocycle h = Horocycle::with_radius(contact, R);
    const EuclideanCircle e = to_euclidean(h);
    const int k = circle(p, e.center, e.radius, false, "horocycle");
    p.items[k].ref = contact;
    p.items[k].ref_value = h.level;
  }
  label(p, dot(p, contact), contact, "α");
  return single("horocycles", std::move(p));
}

Scene render_orbit(const SelfMap& f, Complex z0, int steps) {
  if (f.model() != Model::disk) throw ModelMismatch("render_orbit expects a disk map");
  if (!(std::abs(z0) < 1.0)) throw DomainError("render_orbit: start point must lie in the open disk");
  if (steps < 0) throw DomainError("render_orbit: step count must be nonnegative");
  Panel p = disk_panel();
  if (is_identity(f)) {
    label(p, dot(p, z0), z0, "z0");
    return single("orbit", std::move(p));
  }
  Primitive line;
  line.kind = PrimitiveKind::polyline;
  line.role = "orbit";
  line.points.push_back(z0);
  Complex z = z0;
  for (int k = 0; k < steps; ++k) line.points.push_back(z = f(z));
  const int orbit = add(p, std::move(line));
  label(p, orbit, z0, "z0");
  const AnalysisReport report = analyze(f);
  for (const auto& rec : report.fixed_points)
    if (rec.is_denjoy_wolff) label(p, dot(p, rec.location), rec.location, "DW");
  return single("orbit", std::move(p));
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

std::string escape(const std::string& t) {
  std::string out;
  for (char c : t) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string stroke(bool dashed) {
  return std::string(" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"") +
         (dashed ? " stroke-dasharray=\"6 4\"" : "");
}

}  // namespace

std::string to_svg(const Scene& scene) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << scene.width << "\" height=\""
     << scene.height << "\" viewBox=\"0 0 " << scene.width << ' ' << scene.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Panel& p : scene.panels) {
    const Frame& f = p.frame;
    os << "<g transform=\"translate(" << num(p.offset_x) << ",0)\" data-affine=\"" << num(f.scale) << ' '
       << num(f.origin_x) << ' ' << num(f.origin_y) << "\">\n";
    for (const Primitive& it : p.items) {
      switch (it.kind) {
        case PrimitiveKind::circle:
          os << "<circle cx=\"" << num(f.px(it.a)) << "\" cy=\"" << num(f.py(it.a)) << "\" r=\""
             << num(f.scale * it.radius) << '"' << stroke(it.dashed) << "/>\n";
          break;
        case PrimitiveKind::dot:
          os << "<circle cx=\"" << num(f.px(it.a)) << "\" cy=\"" << num(f.py(it.a)) << "\" r=\"" << num(dot_px)
             << "\" fill=\"black\"/>\n";
          break;
        case PrimitiveKind::segment:
          os << "<line x1=\"" << num(f.px(it.a)) << "\" y1=\"" << num(f.py(it.a)) << "\" x2=\"" << num(f.px(it.b))
             << "\" y2=\"" << num(f.py(it.b)) << '"' << stroke(it.dashed) << "/>\n";
          break;
        case PrimitiveKind::polyline: {
          os << "<polyline points=\"";
          for (std::size_t k = 0; k < it.points.size(); ++k)
            os << (k ? " " : "") << num(f.px(it.points[k])) << ',' << num(f.py(it.points[k]));
          os << '"' << stroke(it.dashed) << "/>\n";
          break;
        }
        case PrimitiveKind::label:
          os << "<text x=\"" << num(f.px(it.a) + 6.0) << "\" y=\"" << num(f.py(it.a) - 6.0)
             << "\" font-family=\"serif\" font-size=\"16\">" << escape(it.text) << "</text>\n";
          break;
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

namespace {

using nlohmann::json;

json cjson(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }
Complex cread(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

PrimitiveKind kind_from(const std::string& s) {
  for (auto k : {PrimitiveKind::circle, PrimitiveKind::dot, PrimitiveKind::segment, PrimitiveKind::polyline,
                 PrimitiveKind::label})
    if (s == to_string(k)) return k;
  throw DomainError("scene: unknown primitive kind '" + s + "'");
}

}  // namespace

std::string scene_to_json(const Scene& scene) {
  json panels = json::array();
  for (const Panel& p : scene.panels) {
    json items = json::array();
    for (const Primitive& it : p.items) {
      json j{{"kind", to_string(it.kind)}, {"a", cjson(it.a)}};
      if (it.kind == PrimitiveKind::segment) j["b"] = cjson(it.b);
      if (it.kind == PrimitiveKind::circle) j["radius"] = it.radius;
      if (it.kind == PrimitiveKind::polyline) {
        j["points"] = json::array();
        for (Complex z : it.points) j["points"].push_back(cjson(z));
      }
      if (it.dashed) j["dashed"] = true;
      if (it.kind == PrimitiveKind::label) j["text"] = it.text, j["attached"] = it.attached;
      if (!it.role.empty()) j["role"] = it.role, j["ref"] = cjson(it.ref), j["ref_value"] = it.ref_value;
      items.push_back(std::move(j));
    }
    panels.push_back({{"affine", {{"scale", p.frame.scale}, {"origin_x", p.frame.origin_x}, {"origin_y", p.frame.origin_y}}},
                      {"offset_x", p.offset_x},
                      {"items", std::move(items)}});
  }
  const json doc{{"figure", scene.figure}, {"width", scene.width}, {"height", scene.height}, {"panels", panels}};
  return doc.dump(2) + "\n";
}

Scene scene_from_json(const std::string& text) {
  const json doc = json::parse(text);
  Scene s;
  s.figure = doc.at("figure").get<std::string>();
  s.width = doc.at("width").get<int>();
  s.height = doc.at("height").get<int>();
  for (const json& jp : doc.at("panels")) {
    Panel p;
    const json& a = jp.at("affine");
    p.frame = {a.at("scale").get<double>(), a.at("origin_x").get<double>(), a.at("origin_y").get<double>()};
    p.offset_x = jp.at("offset_x").get<double>();
    for (const json& j : jp.at("items")) {
      Primitive it;
      it.kind = kind_from(j.at("kind").get<std::string>());
      it.a = cread(j.at("a"));
      if (j.contains("b")) it.b = cread(j["b"]);
      it.radius = j.value("radius", 0.0);
      if (j.contains("points"))
        for (const json& q : j["points"]) it.points.push_back(cread(q));
      it.dashed = j.value("dashed", false);
      it.text = j.value("text", std::string{});
      it.attached = j.value("attached", -1);
      it.role = j.value("role", std::string{});
      if (j.contains("ref")) it.ref = cread(j["ref"]);
      it.ref_value = j.value("ref_value", 0.0);
      p.items.push_back(std::move(it));
    }
    s.panels.push_back(std::move(p));
  }
  return s;
}

bool within_viewport(const Scene& scene) {
  for (const Panel& p : scene.panels) {
    const Frame& f = p.frame;
    auto inside = [&](Complex z, double pad) {
      const double x = f.px(z), y = f.py(z);
      return x - pad >= -1e-6 && x + pad <= panel_size + 1e-6 && y - pad >= -1e-6 && y + pad <= scene.height + 1e-6;
    };
    for (const Primitive& it : p.items) {
      bool ok = true;
      switch (it.kind) {
        case PrimitiveKind::circle: ok = inside(it.a, f.scale * it.radius); break;
        case PrimitiveKind::segment: ok = inside(it.a, 0.0) && inside(it.b, 0.0); break;
        case PrimitiveKind::polyline:
          ok = std::all_of(it.points.begin(), it.points.end(), [&](Complex z) { return inside(z, 0.0); });
          break;
        case PrimitiveKind::label:
          ok = inside(it.a, 0.0) && it.attached >= 0 && it.attached < static_cast<int>(p.items.size());
          break;
        default: ok = inside(it.a, 0.0);
      }
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace hypdisk
