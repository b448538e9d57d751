#pragma once

// State files: JSON with local dimensions and the full density matrix,
//
//   {"dim_a": 2, "dim_b": 2, "entries": [[re, im], ...]}
//
// entries lists all (dim_a*dim_b)^2 matrix elements in row-major order,
// where joint index k = i*dim_b + j (party A is the slow index). Unknown
// keys are ignored, so annotated dumps stay loadable.
//
// Error split: structural problems (bad JSON, wrong shapes, non-finite
// numbers) throw StateParseError; a well-formed matrix that is not a valid
// state (Hermiticity, trace, positivity) throws NotAState.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "cqc/errors.hpp"
#include "cqc/linalg.hpp"
#include "cqc/states.hpp"

namespace cqc {

inline DensityMatrix parse_state_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw StateParseError(std::string("state file: invalid JSON: ") +
                          e.what());
  }
  if (!doc.is_object()) {
    throw StateParseError("state file: top level must be an object");
  }
  for (const char* key : {"dim_a", "dim_b", "entries"}) {
    if (!doc.contains(key)) {
      throw StateParseError(std::string("state file: missing key \"") + key +
                            "\"");
    }
  }
  if (!doc["dim_a"].is_number_integer() || !doc["dim_b"].is_number_integer()) {
    throw StateParseError("state file: dim_a and dim_b must be integers");
  }
  const auto dim_a = doc["dim_a"].get<std::int64_t>();
  const auto dim_b = doc["dim_b"].get<std::int64_t>();
  if (dim_a < 1 || dim_b < 1 || dim_a * dim_b > 4096) {
    throw StateParseError("state file: dimensions out of range");
  }
  const Index side = Index(dim_a) * Index(dim_b);
  const auto& entries = doc["entries"];
  if (!entries.is_array() || Index(entries.size()) != side * side) {
    throw StateParseError("state file: entries must hold " +
                          std::to_string(side * side) +
                          " [re, im] pairs (row-major)");
  }
  ComplexMatrix m(side, side);
  for (Index k = 0; k < side * side; ++k) {
    const auto& cell = entries[std::size_t(k)];
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
        !cell[1].is_number()) {
      throw StateParseError("state file: entry " + std::to_string(k) +
                            " is not an [re, im] pair");
    }
    m(k / side, k % side) =
        Complex(cell[0].get<double>(), cell[1].get<double>());
  }
  if (!all_finite(m)) {
    throw StateParseError("state file: non-finite matrix entry");
  }
  DensityMatrix rho(std::move(m), Index(dim_a), Index(dim_b));
  rho.validate_spectrum();
  return rho;
}

// Unreadable input is a usage-level failure (StateParseError), matching the
// malformed-file exit path; IoError stays reserved for output failures.
inline DensityMatrix load_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateParseError("cannot open state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw StateParseError("error reading state file: " + path);
  return parse_state_json(buf.str());
}

// Extra top-level fields (sample provenance, diagnostics) may be supplied
// via `annotations`; they must not collide with the schema keys.
inline std::string state_to_json(
    const DensityMatrix& rho,
    const nlohmann::json& annotations = nlohmann::json::object()) {
  nlohmann::json doc = annotations;
  doc["dim_a"] = rho.dim_a();
  doc["dim_b"] = rho.dim_b();
  nlohmann::json entries = nlohmann::json::array();
  const ComplexMatrix& m = rho.matrix();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

inline void write_state_file(
    const std::string& path, const DensityMatrix& rho,
    const nlohmann::json& annotations = nlohmann::json::object()) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path);
  out << state_to_json(rho, annotations);
  out.flush();
  if (!out) throw IoError("error writing output file: " + path);
}

}  // namespace cqc
