#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "adjointforge/json_io.hpp"
#include "test_support.hpp"

using namespace adjointforge;
using nlohmann::json;

TEST_CASE("matroid serialization round trip") {
  for (const char* name : {"K4", "U(2,4)", "Fano"}) {
    Matroid m = catalog::by_name(name);
    json j = io::matroid_to_json(m);
    Matroid back = io::matroid_from_json(j);
    CHECK(back == m);
  }
}

TEST_CASE("matrix form loads as a column matroid") {
  json j;
  j["field"] = 2;
  j["matrix"] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Matroid m = io::matroid_from_json(j);
  CHECK(m.size() == 3);
  CHECK(m.rank() == 3);
}

TEST_CASE("lattice serialization round trip") {
  FiniteLattice b3 = testsupport::boolean_lattice(3);
  json j = io::lattice_to_json(b3);
  FiniteLattice back = io::lattice_from_json(j);
  CHECK(back == b3);
  // byte stability: serializing again gives the identical document
  CHECK(io::lattice_to_json(back).dump() == j.dump());
}

TEST_CASE("set family round trip keeps canonical order") {
  SetFamily f(5, {bits::from_elements({1, 3}), bits::from_elements({0}), 0});
  json j = io::family_to_json(f);
  CHECK(io::family_from_json(j) == f);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(io::matroid_from_json(json::object()), error);
  json bad;
  bad["n"] = 3;
  bad["bases"] = {{0, 5}};
  CHECK_THROWS_AS(io::matroid_from_json(bad), error);
  json nolat;
  nolat["elements"] = 2;
  CHECK_THROWS_AS(io::lattice_from_json(nolat), error);
}

TEST_CASE("catalog prefix and file resolution") {
  Matroid k4 = io::resolve_matroid("catalog:K4");
  CHECK(k4.basis_count() == 16);
  CHECK_THROWS_AS(io::resolve_matroid("catalog:Nope"), error);
  CHECK_THROWS_AS(io::resolve_matroid("/nonexistent/path.json"), error);

  std::string path = "tmp_matroid_roundtrip.json";
  {
    std::ofstream out(path);
    out << io::matroid_to_json(catalog::q6()).dump();
  }
  Matroid q6 = io::resolve_matroid(path);
  CHECK(q6 == catalog::q6());
  std::remove(path.c_str());
}

TEST_CASE("report serialization carries the documented fields") {
  AdjointReport rep = enumerate_adjoints(catalog::k4());
  json j = io::report_to_json(rep);
  CHECK(j["count"] == 2);
  CHECK(j["histogram"]["28"] == 1);
  CHECK(j["histogram"]["29"] == 1);
  CHECK(j["classes"].size() == 2);
  CHECK(j["minimal"].size() == 1);
  CHECK(j["maximal"].size() == 1);
  CHECK(j["complete"] == true);
}
