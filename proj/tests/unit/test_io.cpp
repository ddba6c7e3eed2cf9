#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dcomp/error.hpp"
#include "dcomp/io.hpp"

using namespace dcomp;

TEST_CASE("polynomial and character JSON round trip") {
  const DirichletPolynomial f{{1, 2.5}, {6, Complex(-1.0, 0.25)}};
  const Json j = to_json(f);
  CHECK(j.dump() == R"({"1":[2.5,0.0],"6":[-1.0,0.25]})");
  CHECK(polynomial_from_json(j) == f);
  CHECK(polynomial_from_json(Json::parse(R"({"2": -1, "3": [0, 1]})")) ==
        DirichletPolynomial({{2, -1.0}, {3, Complex(0.0, 1.0)}}));
  CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"x": 1})")), InvalidArgument);

  const Character chi = Character::from_angles({{2, 0.5}, {5, -1.0}});
  const Character back = character_from_json(to_json(chi));
  CHECK(std::abs(back(10) - chi(10)) < 1e-15);
}

TEST_CASE("symbol files") {
  const auto dir = std::filesystem::temp_directory_path() / "dcomp_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "sym.json";
  {
    std::ofstream(path) << R"({"name": "t", "c0": 1, "psi": {"1": 1, "2": [-1, 0]}})";
  }
  const SymbolSpec spec = read_symbol_file(path);
  CHECK(spec.c0 == 1);
  CHECK(make_symbol(spec).describe() == "s + 1 - 2^{-s}");

  {
    std::ofstream(path) << R"({"c0": 1, "psi": {"2": 1}})";
  }
  CHECK_THROWS_AS(make_symbol(read_symbol_file(path)), CertificationFailure);
  {
    std::ofstream(path) << R"({"c0": 1, "psi": {"2": 1}, "assume_class": true})";
  }
  CHECK(make_symbol(read_symbol_file(path)).certification().provenance == "assumed");
  CHECK_THROWS_AS(read_symbol_file(dir / "missing.json"), InvalidArgument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("corpus") {
  const auto& c = corpus();
  REQUIRE(c.size() == 6);
  for (const auto& spec : c) {
    const Symbol phi = make_symbol(spec);
    CHECK(to_string(phi.symbol_class()) == spec.declared_class);
  }
  CHECK(corpus_entry("five-halves").c0 == 0);
  CHECK_THROWS_AS(corpus_entry("nope"), InvalidArgument);
}

TEST_CASE("fnv1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
