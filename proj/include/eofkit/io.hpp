#pragma once

// JSON state files, ensemble export, and the flat key-value config format.
//
// State file:  { "schema": 1, "d1": int, "d2": int, "matrix": [[re, im], ...] }
// with the (d1 d2)^2 entries in row-major order.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eofkit/eof.hpp"
#include "eofkit/separability.hpp"

namespace eofkit::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json state_to_json(const CMatrix& matrix, BipartiteDims dims);
Json state_to_json(const DensityMatrix& rho);

/// Throws ParseError on schema problems; validation errors propagate unchanged.
DensityMatrix state_from_json(const Json& doc);

std::string write_state(const DensityMatrix& rho);
DensityMatrix read_state(std::string_view text);
DensityMatrix read_state_file(const std::filesystem::path& path);

/// { "d1", "d2", "weights": [...], "members": [[[re, im], ...], ...] }
Json ensemble_to_json(const Ensemble& e);
Json verdict_to_json(const SeparabilityVerdict& v);

/// Lines of `key = value`; '#' starts a comment. Keys: cardinality, restarts,
/// max_iterations, objective_tolerance, seed. Values override `base`.
/// Throws ConfigError on unknown keys or malformed values.
EofConfig parse_config(std::string_view text, EofConfig base = {});
EofConfig read_config_file(const std::filesystem::path& path, EofConfig base = {});

}  // namespace eofkit::io
