#include "eofkit/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace eofkit::io {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorKind::ParseError, "matrix entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

int positive_int_field(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw Error(ErrorKind::ParseError, std::string("missing integer field '") + key + "'");
  }
  const auto v = doc[key].get<long long>();
  if (v < 1 || v > 4096) throw Error(ErrorKind::ParseError, std::string("field '") + key + "' out of range");
  return static_cast<int>(v);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorKind::ConfigError, "bad value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

}  // namespace

Json state_to_json(const CMatrix& matrix, BipartiteDims dims) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) entries.push_back(complex_to_json(matrix(r, c)));
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["d1"] = dims.d1;
  doc["d2"] = dims.d2;
  doc["matrix"] = std::move(entries);
  return doc;
}

Json state_to_json(const DensityMatrix& rho) { return state_to_json(rho.matrix(), rho.dims()); }

DensityMatrix state_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "state file must be a JSON object");
  if (!doc.contains("schema") || doc["schema"] != kSchemaVersion) {
    throw Error(ErrorKind::ParseError, "unsupported or missing schema version");
  }
  const BipartiteDims dims{positive_int_field(doc, "d1"), positive_int_field(doc, "d2")};
  const int n = dims.total();
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
    throw Error(ErrorKind::ParseError, "missing array field 'matrix'");
  }
  const Json& entries = doc["matrix"];
  if (entries.size() != static_cast<size_t>(n) * static_cast<size_t>(n)) {
    throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(entries.size()) + " entries, expected " +
                                                  std::to_string(n * n));
  }
  CMatrix m(n, n);
  size_t k = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = complex_from_json(entries[k++]);
  return validate_density(m, dims);
}

std::string write_state(const DensityMatrix& rho) { return state_to_json(rho).dump(); }

DensityMatrix read_state(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return state_from_json(doc);
}

DensityMatrix read_state_file(const std::filesystem::path& path) { return read_state(slurp(path)); }

Json ensemble_to_json(const Ensemble& e) {
  Json members = Json::array();
  for (const PureState& psi : e.members()) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) amps.push_back(complex_to_json(psi.amplitudes()(i)));
    members.push_back(std::move(amps));
  }
  Json doc;
  doc["d1"] = e.dims().d1;
  doc["d2"] = e.dims().d2;
  doc["weights"] = e.weights();
  doc["members"] = std::move(members);
  return doc;
}

Json verdict_to_json(const SeparabilityVerdict& v) {
  Json doc;
  doc["ppt"] = v.ppt;
  doc["min_pt_eigenvalue"] = v.min_pt_eigenvalue;
  doc["conclusive"] = v.conclusive;
  return doc;
}

EofConfig parse_config(std::string_view text, EofConfig base) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "cardinality") {
      base.cardinality = parse_number<int>(key, value);
    } else if (key == "restarts") {
      base.restarts = parse_number<int>(key, value);
    } else if (key == "max_iterations") {
      base.max_iterations = parse_number<int>(key, value);
    } else if (key == "objective_tolerance") {
      base.objective_tolerance = parse_number<double>(key, value);
    } else if (key == "seed") {
      base.seed = parse_number<std::uint64_t>(key, value);
    } else {
      throw Error(ErrorKind::ConfigError, "unknown key '" + std::string(key) + "'");
    }
  }
  return base;
}

EofConfig read_config_file(const std::filesystem::path& path, EofConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

}  // namespace eofkit::io
