#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cqc/rng.hpp"
#include "cqc/state_io.hpp"
#include "cqc/states.hpp"
#include "test_helpers.hpp"

using namespace cqc;

namespace {

// Hand-rolled document builder; unlike state_to_json it can encode matrices
// that are not valid states.
std::string doc_for(Index dim_a, Index dim_b, const ComplexMatrix& m) {
  nlohmann::json doc;
  doc["dim_a"] = dim_a;
  doc["dim_b"] = dim_b;
  nlohmann::json entries = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump();
}

}  // namespace

TEST_CASE("state files round-trip bit-exactly", "[state-io]") {
  testutil::TempDir dir;
  RandomStream rng(17);
  const DensityMatrix original = random_density_matrix(2, 3, rng);
  const std::string path = dir.file("state.json");

  write_state_file(path, original);
  const DensityMatrix loaded = load_state_file(path);

  REQUIRE(loaded.dim_a() == 2);
  REQUIRE(loaded.dim_b() == 3);
  // serialization uses shortest-round-trip doubles, so equality is exact
  REQUIRE((loaded.matrix() - original.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("annotations survive and unknown keys are ignored", "[state-io]") {
  testutil::TempDir dir;
  const std::string path = dir.file("annotated.json");
  nlohmann::json notes;
  notes["note"] = "hello";
  write_state_file(path, bell_phi_plus(2), notes);

  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  REQUIRE(text.find("\"note\"") != std::string::npos);
  REQUIRE(text.find("\"hello\"") != std::string::npos);

  const DensityMatrix loaded = load_state_file(path);
  REQUIRE((loaded.matrix() - bell_phi_plus(2).matrix()).cwiseAbs().maxCoeff() <=
          1e-15);
}

TEST_CASE("structural problems raise parse errors", "[state-io]") {
  REQUIRE_THROWS_AS(parse_state_json("{"), StateParseError);
  REQUIRE_THROWS_AS(parse_state_json("[1, 2]"), StateParseError);
  REQUIRE_THROWS_AS(parse_state_json("{\"dim_a\": 2, \"entries\": []}"),
                    StateParseError);
  REQUIRE_THROWS_AS(
      parse_state_json("{\"dim_a\": 2.5, \"dim_b\": 2, \"entries\": []}"),
      StateParseError);
  REQUIRE_THROWS_AS(
      parse_state_json("{\"dim_a\": 0, \"dim_b\": 2, \"entries\": []}"),
      StateParseError);
  REQUIRE_THROWS_AS(
      parse_state_json("{\"dim_a\": 100, \"dim_b\": 100, \"entries\": []}"),
      StateParseError);

  // right shape keys, wrong entry payloads
  REQUIRE_THROWS_AS(
      parse_state_json("{\"dim_a\": 1, \"dim_b\": 1, \"entries\": []}"),
      StateParseError);
  REQUIRE_THROWS_AS(
      parse_state_json("{\"dim_a\": 1, \"dim_b\": 1, \"entries\": [[1.0]]}"),
      StateParseError);
  REQUIRE_THROWS_AS(
      parse_state_json(
          "{\"dim_a\": 1, \"dim_b\": 1, \"entries\": [[\"a\", \"b\"]]}"),
      StateParseError);
  REQUIRE_THROWS_AS(
      parse_state_json("{\"dim_a\": 1, \"dim_b\": 1, \"entries\": [[1e999, 0]]}"),
      StateParseError);
}

TEST_CASE("well-formed files can still fail state validation", "[state-io]") {
  // trace 2
  ComplexMatrix twice = ComplexMatrix::Identity(2, 2);
  REQUIRE_THROWS_AS(parse_state_json(doc_for(1, 2, twice)), NotAState);

  // non-Hermitian
  ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
  skew(0, 0) = 0.5;
  skew(1, 1) = 0.5;
  skew(0, 1) = Complex(0.3, 0.1);
  REQUIRE_THROWS_AS(parse_state_json(doc_for(1, 2, skew)), NotAState);

  // negative eigenvalue with unit trace
  ComplexMatrix indefinite = ComplexMatrix::Zero(4, 4);
  indefinite(0, 0) = 1.5;
  indefinite(1, 1) = -0.5;
  REQUIRE_THROWS_AS(parse_state_json(doc_for(2, 2, indefinite)), NotAState);
}

TEST_CASE("filesystem failures map to the right error types", "[state-io]") {
  testutil::TempDir dir;
  // unreadable input is a usage problem, not an output I/O problem
  REQUIRE_THROWS_AS(load_state_file(dir.file("no_such_state.json")),
                    StateParseError);
  REQUIRE_THROWS_AS(
      write_state_file("/nonexistent_dir_xyz/foo.json", bell_phi_plus(2)),
      IoError);
}
