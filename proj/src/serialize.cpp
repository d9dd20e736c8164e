#include "hypdisk/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hypdisk {

using nlohmann::json;

json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const MapSpec& spec) {
  json j{{"model", to_string(spec.model)}};
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, BlaschkeSpec>) {
          j["type"] = "blaschke";
          j["rotation_turns"] = body.rotation_turns;
          j["zeros"] = json::array();
          for (const auto& z : body.zeros)
            j["zeros"].push_back({{"re", z.position.real()}, {"im", z.position.imag()}, {"multiplicity", z.multiplicity}});
        } else if constexpr (std::is_same_v<T, MobiusSpec>) {
          j["type"] = "mobius";
          j["a"] = to_json(body.a), j["b"] = to_json(body.b), j["c"] = to_json(body.c), j["d"] = to_json(body.d);
        } else if constexpr (std::is_same_v<T, PolynomialSpec>) {
          j["type"] = "polynomial";
          j["coefficients"] = json::array();
          for (Complex c : body.coefficients) j["coefficients"].push_back(to_json(c));
        } else if constexpr (std::is_same_v<T, CompositionSpec>) {
          j["type"] = "composition";
          j["outer"] = to_json(*body.outer);
          j["inner"] = to_json(*body.inner);
        } else {
          j["type"] = "cayley_conjugate";
          j["inner"] = to_json(*body.inner);
        }
      },
      spec.body);
  return j;
}

json to_json(const FixedPointRecord& r) {
  return {{"location", to_json(r.location)},
          {"kind", to_string(r.kind)},
          {"multiplier", to_json(r.multiplier)},
          {"is_denjoy_wolff", r.is_denjoy_wolff}};
}

json to_json(const AnalysisReport& r) {
  json pts = json::array();
  for (const auto& p : r.fixed_points) pts.push_back(to_json(p));
  return {{"map", to_json(r.map)},
          {"identity", r.identity},
          {"fixed_points", pts},
          {"method", {{"scan_resolution", r.resolution}, {"denjoy_wolff_source", r.denjoy_wolff_source}}},
          {"notes", r.notes}};
}

json to_json(const VerificationReport& r) {
  json j{{"name", r.name},     {"status", r.status},     {"pass", r.pass},
         {"equality", r.equality}, {"samples", r.samples}, {"seed", r.seed},
         {"worst_margin", r.worst_margin}, {"witness", to_json(r.witness)}};
  if (r.witness2) j["witness2"] = to_json(*r.witness2);
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

json to_json(const DenjoyWolffResult& r) {
  json j{{"record", to_json(r.record)}, {"method", to_string(r.method)}};
  if (!r.approximant_moduli.empty()) j["approximant_moduli"] = r.approximant_moduli;
  if (r.method == DenjoyWolffMethod::iterate) j["iterations"] = r.iterations;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

namespace {

struct Reader {
  const json& j;
  std::string path;

  [[noreturn]] void fail(const std::string& what) const { throw SpecError(path + ": " + what); }

  Reader at(const std::string& key) const {
    if (!j.is_object()) fail("expected an object");
    if (!j.contains(key)) fail("missing field '" + key + "'");
    return {j.at(key), path + "." + key};
  }
  Reader at(std::size_t k) const { return {j.at(k), path + "[" + std::to_string(k) + "]"}; }

  double number() const {
    if (!j.is_number()) fail("expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }
  int integer() const {
    if (!j.is_number_integer()) fail("expected an integer");
    return j.get<int>();
  }
  std::string string() const {
    if (!j.is_string()) fail("expected a string");
    return j.get<std::string>();
  }
  Complex complex() const {
    if (j.is_number()) return number();
    if (!j.is_object()) fail("expected a number or {\"re\", \"im\"}");
    const double im = j.contains("im") ? at("im").number() : 0.0;
    return {at("re").number(), im};
  }
  const json& array() const {
    if (!j.is_array()) fail("expected an array");
    return j;
  }
};

Model model_from(const Reader& r) {
  const std::string m = r.string();
  if (m == "disk") return Model::disk;
  if (m == "upper_half_plane" || m == "uhp") return Model::upper_half_plane;
  r.fail("unknown model '" + m + "' (expected disk or upper_half_plane)");
}

MapSpec read(const Reader& r, Model implied) {
  if (!r.j.is_object()) r.fail("expected an object");
  const Model model = r.j.contains("model") ? model_from(r.at("model")) : implied;
  const std::string type = r.at("type").string();
  if (type == "blaschke") {
    BlaschkeSpec b;
    if (r.j.contains("rotation_turns")) b.rotation_turns = r.at("rotation_turns").number();
    const Reader zeros = r.at("zeros");
    zeros.array();
    for (std::size_t k = 0; k < zeros.j.size(); ++k) {
      const Reader z = zeros.at(k);
      BlaschkeZero zero{z.complex(), 1};
      if (z.j.is_object() && z.j.contains("multiplicity")) {
        zero.multiplicity = z.at("multiplicity").integer();
        if (zero.multiplicity < 1) z.at("multiplicity").fail("multiplicity must be at least 1");
      }
      if (!(std::abs(zero.position) < 1.0)) z.fail("zero must lie in the open unit disk");
      b.zeros.push_back(zero);
    }
    return {model, b};
  }
  if (type == "mobius") {
    MobiusSpec m{r.at("a").complex(), r.at("b").complex(), r.at("c").complex(), r.at("d").complex()};
    if (std::abs(m.a * m.d - m.b * m.c) == 0.0) r.fail("degenerate Mobius coefficients (ad - bc = 0)");
    return {model, m};
  }
  if (type == "polynomial") {
    PolynomialSpec p;
    const Reader cs = r.at("coefficients");
    cs.array();
    if (cs.j.empty()) cs.fail("need at least one coefficient");
    for (std::size_t k = 0; k < cs.j.size(); ++k) p.coefficients.push_back(cs.at(k).complex());
    return {model, p};
  }
  if (type == "composition") {
    MapSpec outer = read(r.at("outer"), model), inner = read(r.at("inner"), model);
    if (outer.model != model) r.at("outer").fail("operand model differs from the composition's model");
    if (inner.model != model) r.at("inner").fail("operand model differs from the composition's model");
    return spec::composition(std::move(outer), std::move(inner));
  }
  if (type == "cayley_conjugate") {
    const Model other = model == Model::disk ? Model::upper_half_plane : Model::disk;
    MapSpec inner = read(r.at("inner"), other);
    if (inner.model != other) r.at("inner").fail("inner map must live in the other model");
    return spec::cayley_conjugate(std::move(inner));
  }
  r.at("type").fail("unknown map type '" + type + "' (expected blaschke, mobius, polynomial, composition or cayley_conjugate)");
}

}  // namespace

MapSpec spec_from_json(const json& j) { return read(Reader{j, "$"}, Model::disk); }

MapSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset into line and column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') ++line, col = 1;
      else ++col;
    }
    throw SpecError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": syntax error");
  }
  return spec_from_json(j);
}

MapSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const SpecError& e) {
    throw SpecError(path + ": " + e.what());
  }
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

}  // namespace hypdisk
