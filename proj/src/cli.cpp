#include "hypdisk/cli.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hypdisk/fixedpoints.hpp"
#include "hypdisk/render.hpp"
#include "hypdisk/serialize.hpp"
#include "hypdisk/verifiers.hpp"

namespace hypdisk::cli {

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) throw DomainError("bad complex literal '" + whole + "'");
  return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw DomainError("empty complex literal");
  if (const auto at = s.find('@'); at != std::string::npos) {
    const std::string angle = s.substr(at + 1);
    if (angle.size() < 4 || angle.compare(angle.size() - 3, 3, "deg") != 0)
      throw DomainError("polar literal '" + text + "' needs an angle in degrees, e.g. 0.75@30deg");
    return polar_deg(parse_real(s.substr(0, at), text), parse_real(angle.substr(0, angle.size() - 3), text));
  }
  if (s.back() != 'i') return parse_real(s, text);
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, text);
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, split), text), imag_part(body.substr(split))};
}

namespace {

struct Config {
  std::string map_path;
  std::string out_path;
  std::string scene_path;
  double tol = 1e-6;
  bool tol_set = false;
  int samples = 256;
  std::uint64_t seed = 42;
  std::string method = "both";
  std::string inequality = "all";
  std::string figure;
  std::string zeta, fzeta, z0, fz;
  std::optional<double> alpha_deg;
  std::vector<double> radii;
  double radius = 0.40825;
  double big_radius = 0.979796;
  double z_deg = 120.0;
  int steps = 50;
};

struct Failure {
  int code;
  std::string message;
};

void emit(const Config& cfg, const std::string& doc, std::ostream& out) {
  if (cfg.out_path.empty()) out << doc;
  else write_atomic(cfg.out_path, doc);
}

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmtc(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

// Disk-frame map from a spec file; half-plane specs are conjugated through the Cayley map.
SelfMap load_disk_map(const Config& cfg, std::string* note = nullptr) {
  if (cfg.map_path.empty()) throw Failure{input_error, "--map is required"};
  SelfMap f(load_spec(cfg.map_path));
  if (f.model() == Model::upper_half_plane) {
    if (note) *note = "half-plane spec analysed through its disk conjugate";
    f = conjugate_to_disk(f);
  }
  return f;
}

void require_valid(const SelfMap& f, int samples, nlohmann::json& doc) {
  const ValidationReport v = validate_selfmap(f, samples);
  doc["validation"] = {{"passed", v.passed},         {"structural", v.structural}, {"max_modulus", v.max_modulus},
                       {"witness", to_json(v.witness)}, {"samples", v.samples},       {"reason", v.reason}};
  if (!v.passed)
    throw Failure{validation_failure, "map is not a self-map: |f| = " + fmt(v.max_modulus) + " at " + fmtc(v.witness) +
                                          (v.reason.empty() ? "" : " (" + v.reason + ")")};
}

int cmd_analyze(const Config& cfg, std::ostream& out, std::ostream& err) {
  std::string note;
  const SelfMap f = load_disk_map(cfg, &note);
  nlohmann::json doc;
  try {
    require_valid(f, std::max(cfg.samples, default_validation_samples), doc);
  } catch (const Failure& e) {
    emit(cfg, doc.dump(2) + "\n", out);
    throw;
  }
  const AnalysisReport report = analyze(f);
  nlohmann::json r = to_json(report);
  r["validation"] = doc["validation"];
  if (!note.empty()) r["notes"].push_back(note);
  emit(cfg, r.dump(2) + "\n", out);
  if (!cfg.out_path.empty()) {
    if (report.identity) {
      out << "identity map: every point is fixed\n";
      return ok;
    }
    out << "kind      location                                   multiplier                 DW\n";
    for (const auto& p : report.fixed_points) {
      char line[256];
      std::snprintf(line, sizeof line, "%-9s %-42s %-26s %s\n", to_string(p.kind), fmtc(p.location).c_str(),
                    p.kind == FixedPointKind::boundary ? fmt(p.multiplier.real()).c_str() : fmtc(p.multiplier).c_str(),
                    p.is_denjoy_wolff ? "yes" : "");
      out << line;
    }
  }
  for (const auto& n : report.notes) err << "note: " << n << '\n';
  return ok;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream&) {
  const SelfMap f = load_disk_map(cfg);
  nlohmann::json doc;
  require_valid(f, default_validation_samples, doc);
  GridOptions grid{cfg.samples, cfg.seed, Execution::parallel};
  std::vector<VerificationReport> reports = verify(f, cfg.inequality, grid);
  bool all = true;
  for (auto& r : reports) {
    if (cfg.tol_set && r.status != "skipped: precondition") {
      r.pass = r.worst_margin >= -cfg.tol;
      r.status = r.pass ? "pass" : "fail";
    }
    all = all && r.pass;
  }
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : reports) list.push_back(to_json(r));
  doc["map"] = to_json(f.spec());
  doc["seed"] = cfg.seed;
  doc["samples"] = cfg.samples;
  doc["reports"] = list;
  doc["all_pass"] = all;
  emit(cfg, doc.dump(2) + "\n", out);
  if (!cfg.out_path.empty()) {
    out << "inequality          status                  worst margin        equality\n";
    for (const auto& r : reports) {
      char line[256];
      const bool skip = r.status.rfind("skipped", 0) == 0;
      std::snprintf(line, sizeof line, "%-19s %-23s %-19s %s\n", r.name.c_str(), r.status.c_str(),
                    skip ? "-" : fmt(r.worst_margin, "%.3e").c_str(), r.equality ? "yes" : "");
      out << line;
    }
  }
  return all ? ok : validation_failure;
}

int cmd_dw(const Config& cfg, std::ostream& out, std::ostream& err) {
  const SelfMap f = load_disk_map(cfg);
  nlohmann::json doc;
  require_valid(f, default_validation_samples, doc);
  if (is_identity(f)) throw Failure{input_error, "the identity map has no Denjoy-Wolff point"};
  std::vector<DenjoyWolffMethod> methods;
  if (cfg.method == "wolff" || cfg.method == "both") methods.push_back(DenjoyWolffMethod::wolff);
  if (cfg.method == "iterate" || cfg.method == "both") methods.push_back(DenjoyWolffMethod::iterate);
  std::vector<DenjoyWolffResult> results;
  for (auto m : methods) {
    try {
      results.push_back(denjoy_wolff(f, m));
    } catch (const NonConvergence& e) {
      throw Failure{non_convergence, std::string(to_string(m)) + ": " + e.what()};
    }
  }
  doc["map"] = to_json(f.spec());
  doc["results"] = nlohmann::json::array();
  for (const auto& r : results) doc["results"].push_back(to_json(r));
  int code = ok;
  if (results.size() == 2) {
    const double gap = std::abs(results[0].record.location - results[1].record.location);
    const bool agree = gap <= cfg.tol;
    doc["agreement"] = {{"distance", gap}, {"tolerance", cfg.tol}, {"agree", agree}};
    if (!agree) {
      err << "methods disagree: |wolff - iterate| = " << fmt(gap, "%.3e") << " > " << fmt(cfg.tol, "%.3e") << '\n';
      code = non_convergence;
    }
  }
  emit(cfg, doc.dump(2) + "\n", out);
  if (!cfg.out_path.empty())
    for (const auto& r : results)
      out << to_string(r.method) << ": " << to_string(r.record.kind) << ' ' << fmtc(r.record.location)
          << " multiplier " << (r.record.kind == FixedPointKind::boundary ? fmt(r.record.multiplier.real())
                                                                          : fmtc(r.record.multiplier))
          << '\n';
  return code;
}

int cmd_render(const Config& cfg, std::ostream& out, std::ostream&) {
  auto need = [&](bool present, const std::string& flags) {
    if (!present) throw Failure{input_error, "--figure " + cfg.figure + " requires " + flags};
  };
  Scene scene;
  if (cfg.figure == "circles") {
    need(!cfg.zeta.empty(), "--zeta");
    const std::vector<double> radii = cfg.radii.empty() ? std::vector<double>{0.25, 0.5, 0.75, 0.875} : cfg.radii;
    scene = render_circles(parse_complex(cfg.zeta), radii);
  } else if (cfg.figure == "julia-disks") {
    need(!cfg.zeta.empty() && !cfg.fzeta.empty(), "--zeta and --fzeta");
    scene = render_julia_disks(parse_complex(cfg.zeta), parse_complex(cfg.fzeta), cfg.radius);
  } else if (cfg.figure == "inversion") {
    scene = render_inversion(cfg.radius, cfg.big_radius, cfg.z_deg, cfg.fz.empty() ? Complex(0.4, 1.0) : parse_complex(cfg.fz));
  } else if (cfg.figure == "horocycles") {
    need(cfg.alpha_deg.has_value(), "--alpha-deg");
    const std::vector<double> radii =
        cfg.radii.empty() ? std::vector<double>{2.0 / 3.0, 0.5, 1.0 / 3.0, 1.0 / 6.0} : cfg.radii;
    scene = render_horocycles(*cfg.alpha_deg, radii);
  } else if (cfg.figure == "orbit") {
    need(!cfg.map_path.empty() && !cfg.z0.empty(), "--map and --z0");
    const SelfMap f = load_disk_map(cfg);
    nlohmann::json doc;
    require_valid(f, default_validation_samples, doc);
    scene = render_orbit(f, parse_complex(cfg.z0), cfg.steps);
  } else {
    throw Failure{input_error, "unknown figure '" + cfg.figure + "'"};
  }
  emit(cfg, to_svg(scene), out);
  if (!cfg.scene_path.empty()) write_atomic(cfg.scene_path, scene_to_json(scene));
  return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Fixed points of holomorphic self-maps of the disk"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool with_map) {
    if (with_map) sub->add_option("--map", cfg.map_path, "map spec (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", cfg.out_path, "output path (default: stdout)");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  };
  auto positive_samples = CLI::Range(64, 1 << 24);

  auto* analyze_cmd = app.add_subcommand("analyze", "locate and classify all fixed points");
  common(analyze_cmd, true);
  analyze_cmd->add_option("--samples", cfg.samples, "boundary samples for the self-map check")->check(positive_samples);

  auto* verify_cmd = app.add_subcommand("verify", "check the inequalities on a sample grid");
  common(verify_cmd, true);
  verify_cmd->add_option("--inequality", cfg.inequality, "inequality name or 'all'")->capture_default_str();
  verify_cmd->add_option("--samples", cfg.samples, "grid size")->check(positive_samples)->capture_default_str();
  verify_cmd->add_option("--tol", cfg.tol, "pass threshold on the worst margin (default 1e-9)")
      ->check(CLI::PositiveNumber);

  auto* dw_cmd = app.add_subcommand("dw", "compute the Denjoy-Wolff point");
  common(dw_cmd, true);
  dw_cmd->add_option("--method", cfg.method, "wolff, iterate or both")
      ->check(CLI::IsMember({"wolff", "iterate", "both"}))
      ->capture_default_str();
  dw_cmd->add_option("--tol", cfg.tol, "agreement tolerance for --method both")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* render_cmd = app.add_subcommand("render", "write an SVG figure");
  common(render_cmd, true);
  render_cmd->add_option("--figure", cfg.figure, "circles, julia-disks, inversion, horocycles or orbit")
      ->required()
      ->check(CLI::IsMember({"circles", "julia-disks", "inversion", "horocycles", "orbit"}));
  render_cmd->add_option("--zeta", cfg.zeta, "center point (circles, julia-disks)");
  render_cmd->add_option("--fzeta", cfg.fzeta, "image point f(zeta) (julia-disks)");
  render_cmd->add_option("--alpha-deg", cfg.alpha_deg, "contact angle in degrees (horocycles)");
  render_cmd->add_option("--z0", cfg.z0, "orbit start (orbit)");
  render_cmd->add_option("--steps", cfg.steps, "orbit length (orbit)")->check(CLI::NonNegativeNumber)->capture_default_str();
  render_cmd->add_option("--radii", cfg.radii, "pseudo-radii (circles) or Euclidean radii (horocycles)")->delimiter(',');
  render_cmd->add_option("--radius", cfg.radius, "Euclidean radius r (julia-disks, inversion)")->capture_default_str();
  render_cmd->add_option("--big-radius", cfg.big_radius, "Euclidean radius R (inversion)")->capture_default_str();
  render_cmd->add_option("--z-deg", cfg.z_deg, "angle of z on the small circle (inversion)")->capture_default_str();
  render_cmd->add_option("--fz", cfg.fz, "image point f(z) (inversion)");
  render_cmd->add_option("--scene", cfg.scene_path, "also write the scene as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }
  cfg.tol_set = verify_cmd->parsed() && verify_cmd->count("--tol") > 0;

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(cfg, out, err);
    if (verify_cmd->parsed()) return cmd_verify(cfg, out, err);
    if (dw_cmd->parsed()) return cmd_dw(cfg, out, err);
    return cmd_render(cfg, out, err);
  } catch (const Failure& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return non_convergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  }
}

}  // namespace hypdisk::cli
