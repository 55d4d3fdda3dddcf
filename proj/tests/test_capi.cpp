#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "surfcensus/c_api.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names") {
  CHECK(sc_schema_version() == 1);
  CHECK(std::string(sc_status_name(SC_OK)) == "ok");
  CHECK(std::string(sc_status_name(SC_STRUCTURAL)) == "structural");
  CHECK(std::string(sc_status_name(99)) == "internal");
}

TEST_CASE("load and validate") {
  sc_polyhedron* p = nullptr;
  REQUIRE(sc_polyhedron_load("dodecahedron", &p) == SC_OK);
  int f = 0, e = 0, v = 0;
  CHECK(sc_polyhedron_counts(p, &f, &e, &v) == SC_OK);
  CHECK(f == 12);
  CHECK(e == 30);
  CHECK(v == 20);
  char* text = nullptr;
  CHECK(sc_validate_report(p, &text) == SC_OK);
  CHECK(take(text).find("valid yes") != std::string::npos);
  sc_polyhedron_free(p);

  REQUIRE(sc_polyhedron_load("cube", &p) == SC_OK);
  int rc = sc_validate_report(p, &text);
  CHECK(rc != SC_OK);
  CHECK(std::string(sc_last_error()).find("face with 4 edges") != std::string::npos);
  take(text);
  sc_polyhedron_free(p);

  CHECK(sc_polyhedron_load("/nonexistent/poly.json", &p) != SC_OK);
  CHECK(p == nullptr);
  CHECK(sc_polyhedron_load(nullptr, &p) == SC_INVALID_INPUT);
}

TEST_CASE("bounds") {
  sc_polyhedron* p = nullptr;
  REQUIRE(sc_polyhedron_load("dodecahedron", &p) == SC_OK);
  char* csv = nullptr;
  REQUIRE(sc_bounds_report(p, 2, &csv) == SC_OK);
  auto s = take(csv);
  CHECK(s.rfind("# schema-version=1\n", 0) == 0);
  CHECK(s.find("c_P,30\n") != std::string::npos);
  CHECK(s.find("c2,241\n") != std::string::npos);
  sc_polyhedron_free(p);

  REQUIRE(sc_thresholds_report(&csv) == SC_OK);
  CHECK(take(csv).find("\n2,1,2,6,2,336,") != std::string::npos);
  REQUIRE(sc_graph_count_report(2, 2, &csv) == SC_OK);
  CHECK(take(csv).find("\n2,1,") != std::string::npos);
}

TEST_CASE("census") {
  sc_polyhedron* p = nullptr;
  REQUIRE(sc_polyhedron_load("dodecahedron", &p) == SC_OK);
  char *csv = nullptr, *detail = nullptr;
  REQUIRE(sc_census_report(p, -1, -1, 1, 4, "all", 1, &csv, &detail) == SC_OK);
  auto s = take(csv);
  take(detail);
  CHECK(s.find("\n4,2,2,2,") != std::string::npos);
  CHECK(sc_census_report(p, -1, -1, 1, 7, "all", 1, &csv, &detail) == SC_RESOURCE);
  CHECK(sc_census_report(p, -1, -1, 1, 2, "bogus", 1, &csv, &detail) == SC_INVALID_INPUT);
  REQUIRE(sc_census_report(p, -1, -1, 4, 4, "cycles:(1 2)", 1, &csv, &detail) == SC_OK);
  take(detail);
  CHECK(take(csv).find("\n4,2,1,1,") != std::string::npos);
  sc_polyhedron_free(p);
}

TEST_CASE("covers") {
  char* csv = nullptr;
  REQUIRE(sc_covers_report(2, 2, "all", 0, &csv) == SC_OK);
  auto s = take(csv);
  CHECK(s.find("2,id,8,5,") != std::string::npos);
  CHECK(s.find("2,(1 2),8,5,") != std::string::npos);
  REQUIRE(sc_covers_report(3, 3, "cycles:(1 3)", 0, &csv) == SC_OK);
  s = take(csv);
  CHECK(s.find(",(1 3),yes,") != std::string::npos);
  CHECK(sc_covers_report(7, 7, "all", 0, &csv) == SC_RESOURCE);
}

TEST_CASE("coxeter ball and qi") {
  sc_polyhedron* p = nullptr;
  REQUIRE(sc_polyhedron_load("dodecahedron", &p) == SC_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(sc_coxeter_ball_report(p, 2, 7, 20, &a) == SC_OK);
  REQUIRE(sc_coxeter_ball_report(p, 2, 7, 20, &b) == SC_OK);
  auto sa = take(a), sb = take(b);
  CHECK(sa == sb);
  CHECK(sa.find("ball_size,1,,13,") != std::string::npos);
  CHECK(sa.find("ball_size,2,,115,") != std::string::npos);
  CHECK(sa.find(",no\n") == std::string::npos);
  sc_polyhedron_free(p);

  REQUIRE(sc_qi_report(2, 1, 3, 5, &a) == SC_OK);
  CHECK(take(a).find(",no\n") == std::string::npos);
  CHECK(sc_qi_report(2, 1, 0, 5, &a) == SC_RESOURCE);
}
