#pragma once

#include <string>
#include <vector>

#include "hypdisk/fixedpoints.hpp"
#include "hypdisk/geometry.hpp"
#include "hypdisk/selfmap.hpp"

namespace hypdisk {

/// Model-to-pixel affine map: x_px = origin_x + scale * Re z, y_px = origin_y - scale * Im z.
struct Frame {
  double scale = 250.0;
  double origin_x = 300.0;
  double origin_y = 300.0;

  double px(Complex z) const { return origin_x + scale * z.real(); }
  double py(Complex z) const { return origin_y - scale * z.imag(); }
};

enum class PrimitiveKind { circle, dot, segment, polyline, label };

const char* to_string(PrimitiveKind k);

/// One styled primitive in model coordinates. Circles drawn from an invariant family keep the
/// family parameters in `role`/`ref`/`ref_value` so they can be checked against their defining
/// equation after a round trip.
struct Primitive {
  PrimitiveKind kind = PrimitiveKind::dot;
  Complex a{};           // circle center, dot position, segment start, label anchor
  Complex b{};           // segment end
  double radius = 0.0;   // circle radius (model units)
  std::vector<Complex> points;
  bool dashed = false;
  std::string text;      // label text
  int attached = -1;     // index of the primitive a label belongs to
  std::string role;      // "noneuclidean", "horocycle", "unit-circle", ... or empty
  Complex ref{};         // non-Euclidean center or horocycle contact
  double ref_value = 0.0;  // pseudo-radius or horocycle level
};

struct Panel {
  Frame frame;
  double offset_x = 0.0;  // horizontal pixel offset of the panel inside the document
  std::vector<Primitive> items;
};

struct Scene {
  std::string figure;
  int width = 600;
  int height = 600;
  std::vector<Panel> panels;
};

inline constexpr int panel_size = 600;

Scene render_circles(Complex zeta, const std::vector<double>& pseudo_radii);
/// Two hyperbolic disks in the upper half-plane with Euclidean radii r and R = r Im f(zeta)/Im zeta,
/// the real-axis dilation center p and the construction lines. When Im f(zeta) = Im zeta the
/// dilation center is at infinity and p with its lines is omitted.
Scene render_julia_disks(Complex zeta, Complex f_zeta, double r);
/// Limiting configuration: horodisks at 0 with radii r < R, a point z on the small circle at
/// angle z_deg about its center, a point f_z, and the image of everything under w -> -1/w.
Scene render_inversion(double r, double R, double z_deg, Complex f_z);
Scene render_horocycles(double alpha_deg, const std::vector<double>& radii);
Scene render_orbit(const SelfMap& f, Complex z0, int steps);

std::string to_svg(const Scene& scene);
std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);

/// True when every primitive of every panel maps inside the panel's pixel box.
bool within_viewport(const Scene& scene);

}  // namespace hypdisk
