#pragma once

// JSON and CSV interchange.
//
//   matrices      {"re": [[...]], "im": [[...]]}, row-major
//   vectors       plain arrays
//   strategies    {"x0":[3], "x1":[3], "y0":[3], "y1":[3], "M":[[3]x3], "N":[[3]x3]}
//   PSO configs   object with PsoConfig field names; missing keys keep defaults
//
// Matrix entries are rounded to 1e-15; correlators and reports carry 12
// significant digits.

#include "bilocal/correlations.hpp"
#include "bilocal/experiments.hpp"
#include "bilocal/optimizer.hpp"
#include "bilocal/qstate.hpp"

#include "json.hpp"

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

namespace bilocal {

using Json = nlohmann::json;

/// Malformed or incomplete input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const TwoQubitState& rho);
Json to_json(const BlochForm& bf);
Json to_json(const CorrelationResult& r);
Json to_json(const WernerPrime& w);
Json to_json(const MeasurementStrategy& s);
Json to_json(const PsoConfig& c);
Json to_json(const AuditReport& a);
Json to_json(const PqCell& c);
Json to_json(std::span<const PqCell> cells);

/// Throws ParseError on missing keys, wrong shapes or non-numeric entries.
MeasurementStrategy strategy_from_json(const Json& j);
/// Throws ParseError on unknown keys or wrong types, std::invalid_argument
/// when the resulting config fails PsoConfig::validate().
PsoConfig config_from_json(const Json& j);
/// Throws ParseError or InvalidState.
TwoQubitState state_from_json(const Json& j);

/// Reads and parses a JSON file; throws ParseError on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);

std::string pq_cells_to_csv(std::span<const PqCell> cells);

}  // namespace bilocal
