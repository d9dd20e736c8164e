#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypdisk/fixedpoints.hpp"
#include "hypdisk/selfmap.hpp"
#include "hypdisk/verifiers.hpp"

namespace hypdisk {

/// Malformed map spec document. The message names the line/column of a syntax error or the JSON
/// path of the offending field.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

nlohmann::json to_json(Complex z);
nlohmann::json to_json(const MapSpec& spec);
nlohmann::json to_json(const FixedPointRecord& r);
nlohmann::json to_json(const AnalysisReport& r);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const DenjoyWolffResult& r);

MapSpec spec_from_json(const nlohmann::json& j);
/// Parse a spec document; throws SpecError with diagnostics.
MapSpec parse_spec(const std::string& text);
MapSpec load_spec(const std::string& path);

/// Write through a temporary file in the same directory and rename over the target.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace hypdisk
