#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "surfcensus/error.hpp"
#include "surfcensus/surfaces.hpp"

using namespace sc;

namespace {

const Polyhedron& dodeca() {
  static const Polyhedron P = dodecahedron();
  return P;
}

DiskSpec spec_n(int n) { return default_disk_spec(dodeca(), n); }

long involution_number(int m) {
  long a = 1, b = 1;
  for (int k = 2; k <= m; ++k) {
    long c = b + (k - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

// Cyclic sequences equal up to rotation and reversal.
bool same_cycle(std::vector<int> a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (int flip = 0; flip < 2; ++flip) {
    for (std::size_t r = 0; r < a.size(); ++r) {
      std::rotate(a.begin(), a.begin() + 1, a.end());
      if (a == b) return true;
    }
    std::reverse(a.begin(), a.end());
  }
  return false;
}

}  // namespace

TEST_CASE("disk choice") {
  auto s = spec_n(3);
  auto cf = chain_faces(s);
  const auto& P = dodeca();
  CHECK(cf.B == s.F2);
  CHECK(P.adjacent(cf.A, s.F1));
  CHECK_FALSE(P.adjacent(cf.A, cf.B));
  CHECK(P.adjacent(cf.T, cf.A));
  CHECK(P.adjacent(cf.T, cf.B));
  CHECK(P.adjacent(cf.L, cf.A));
  auto bad = s;
  bad.F2 = -1;
  for (int f = 0; f < P.num_faces(); ++f)
    if (f != s.F1 && !P.adjacent(f, s.F1)) bad.F2 = f;
  CHECK_THROWS_AS(chain_faces(bad), Error);
  auto zero = s;
  zero.n = 0;
  CHECK_THROWS_AS(chain_faces(zero), Error);
  DiskSpec cubic;
  cubic.host = cube();
  cubic.F1 = 0;
  cubic.F2 = cube().neighbor(0, 0);
  try {
    chain_faces(cubic);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Status::invalid_input);
    CHECK(std::string(e.what()).find("pentagonal") != std::string::npos);
  }
}

TEST_CASE("build disk") {
  auto one = build_disk(spec_n(1));
  CHECK(one.hat.num_faces() == 12);
  CHECK(one.disk.faces.size() == 2);
  CHECK(satisfies_convexity(one.hat, one.disk));
  CHECK(one.cut_edges.empty());

  auto two = build_disk(spec_n(2));
  // Doubling across a pentagon: 12 + 12 - 2 glued faces - 5 fused pairs.
  CHECK(two.hat.num_faces() == 17);
  CHECK(satisfies_convexity(two.hat, two.disk));
  CHECK(glue_sigma(spec_n(2), identity_involution(1)).cells.size() == 3);

  for (int n = 1; n <= 5; ++n) {
    auto b = build_disk(spec_n(n));
    CHECK(b.hat.num_faces() == 12 + 5 * (n - 1));
    CHECK(validate_right_angled(b.hat).ok());
    CHECK(static_cast<int>(b.cut_edges.size()) == cut_edge_count(n));
    // Each junction drops the glued side of both copies and fuses two pairs of sides.
    CHECK(b.hat.face(b.f1_face).size() == static_cast<std::size_t>(5 * n - 4 * (n - 1)));
  }
  CHECK(build_disk(spec_n(4)).cut_edges.size() == 2);
}

TEST_CASE("glue sigma") {
  for (int n = 1; n <= 5; ++n)
    for (auto& s : all_involutions(cut_edge_count(n))) {
      auto c = glue_sigma(spec_n(n), s);
      CHECK(consistency_issues(c).empty());
      CHECK(c.runs.size() == static_cast<std::size_t>(n + 5));
      for (int d : orbifold_vertex_degrees(c)) CHECK(d == 4);
      auto b = build_disk(spec_n(n));
      CHECK(check_injectivity_hypotheses(b.hat, b.disk, c));
    }
  auto id = glue_sigma(spec_n(4), identity_involution(2));
  for (auto& cell : id.cells)
    for (auto& sd : cell.sides) CHECK(sd.kind != SideKind::glued);
  auto t = glue_sigma(spec_n(4), parse_cycles("(1 2)", 2));
  int glued = 0;
  for (auto& cell : t.cells)
    for (auto& sd : cell.sides) glued += sd.kind == SideKind::glued;
  CHECK(glued == 4);
  CHECK_THROWS_AS(glue_sigma(spec_n(4), identity_involution(3)), Error);
  CHECK_THROWS_AS(glue_sigma(spec_n(4), Involution{1, 1}), Error);

  auto broken = t;
  for (auto& cell : broken.cells)
    for (auto& sd : cell.sides)
      if (sd.kind == SideKind::glued) {
        sd.element = {};
        break;
      }
  CHECK_FALSE(consistency_issues(broken).empty());
}

TEST_CASE("orbifold degrees on hand-built complexes") {
  const auto& P = dodeca();
  // One face alone: every corner sits on two perpendicular mirrors.
  auto single = complex_from_cells(P, {{Word{}, 0}});
  for (int d : orbifold_vertex_degrees(single)) CHECK(d == 4);
  // Boundary of one chamber: a sphere whose vertices have degree 3.
  std::vector<std::pair<Word, int>> all;
  for (int f = 0; f < P.num_faces(); ++f) all.push_back({Word{}, f});
  auto sphere = complex_from_cells(P, all);
  for (int d : orbifold_vertex_degrees(sphere)) CHECK(d == 3);
  CHECK(euler_characteristic(sphere) == 2);
  CHECK(genus(sphere) == 0);
  auto b = build_disk(spec_n(1));
  CHECK_FALSE(check_injectivity_hypotheses(b.hat, b.disk, sphere));
  CHECK_THROWS_AS(euler_characteristic(single), Error);

  // A disk failing convexity makes the hypotheses false.
  FaceDisk nonconvex = b.disk;
  nonconvex.transverse.pop_back();
  CHECK_FALSE(check_injectivity_hypotheses(b.hat, nonconvex, glue_sigma(spec_n(1), {})));
}

TEST_CASE("orbifold Euler characteristic") {
  for (int n = 1; n <= 6; ++n) {
    auto c = glue_sigma(spec_n(n), identity_involution(cut_edge_count(n)));
    // Right-angled polygon with n + 5 corners.
    CHECK(orbifold_euler_characteristic(c) == Length(4 - (n + 5), 4));
  }
}

TEST_CASE("develop") {
  auto c = glue_sigma(spec_n(4), parse_cycles("(1 2)", 2));
  auto d0 = develop(c, 0);
  CHECK(d0.cells.size() == 5);
  CHECK(d0.transverse.size() == 9);
  for (int depth = 1; depth <= 3; ++depth) {
    auto d = develop(c, depth);
    CHECK(d.embedded);
    CHECK(d.convex);
    CHECK(d.translates.size() == (std::size_t{1} << depth));
    CHECK(d.cells.size() == 5 * d.translates.size());
    auto sorted = d.cells;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  }
  // Second doubling meets the first wall: four copies around a vertex.
  auto d2 = develop(glue_sigma(spec_n(1), {}), 2);
  CHECK(d2.translates.size() == 4);
  CHECK_THROWS_AS(develop(c, kMaxDevelopDepth + 1), Error);
  CHECK_THROWS_AS(develop(c, -1), Error);
  for (int n = 1; n <= 4; ++n)
    for (auto& s : all_involutions(cut_edge_count(n))) CHECK(develop(glue_sigma(spec_n(n), s), 2).convex);
}

TEST_CASE("half-space invariant") {
  auto one = glue_sigma(spec_n(1), {});
  auto h = halfspace_invariant(one);
  CHECK(h.adjacency_ok);
  auto b = build_disk(spec_n(1));
  std::vector<int> gens;
  for (auto& w : h.walls) gens.push_back(w.gen);
  CHECK(same_cycle(gens, b.disk.transverse));
  for (int n = 1; n <= 4; ++n) {
    auto sigmas = all_involutions(cut_edge_count(n));
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
      auto hi = halfspace_invariant(glue_sigma(spec_n(n), sigmas[i]));
      CHECK(hi.adjacency_ok);
      for (std::size_t j = 0; j < i; ++j)
        CHECK(hi.canonical() != halfspace_invariant(glue_sigma(spec_n(n), sigmas[j])).canonical());
    }
  }
}

TEST_CASE("inequivalence") {
  for (int n = 1; n <= 6; ++n) {
    auto sigmas = all_involutions(cut_edge_count(n));
    std::vector<OrbifoldComplex> cx;
    for (auto& s : sigmas) cx.push_back(glue_sigma(spec_n(n), s));
    for (std::size_t i = 0; i < cx.size(); ++i)
      for (std::size_t j = 0; j < cx.size(); ++j) {
        CHECK(inequivalent(cx[i], cx[j]) == (i != j));
        CHECK(inequivalent(cx[i], cx[j]) == inequivalent(cx[j], cx[i]));
      }
  }
  // Moving a disk by its own group leaves the class unchanged.
  auto spec = spec_n(4);
  auto a = glue_sigma(spec, parse_cycles("(1 2)", 2));
  auto b = glue_sigma(spec, identity_involution(2));
  const auto& G = *a.group;
  for (std::size_t j = 0; j < a.runs.size(); ++j)
    for (std::size_t k = 0; k < a.runs.size(); ++k) {
      Word off = G.multiply(run_generator(a, static_cast<int>(j)), run_generator(a, static_cast<int>(k)));
      CHECK_FALSE(inequivalent(a, a, off));
      CHECK(inequivalent(b, a, off));
      Word offb = G.multiply(run_generator(b, static_cast<int>(j)), run_generator(b, static_cast<int>(k)));
      CHECK_FALSE(inequivalent(b, b, offb));
      CHECK(inequivalent(a, b, offb));
    }
  CHECK_THROWS_AS(inequivalent(a, glue_sigma(spec_n(3), identity_involution(1))), Error);
}

TEST_CASE("closed variant") {
  int c0 = 0;
  bool first = true;
  for (int n : {3, 5, 7}) {
    auto spec = spec_n(n);
    CHECK(closed_cut_count(n) == 2 * n - 2);
    auto id = closed_surface_variant(spec, identity_involution(closed_cut_count(n)));
    CHECK(consistency_issues(id).empty());
    int chi = euler_characteristic(id);
    // Orientation double: four times the orbifold characteristic.
    auto orb = glue_sigma(spec, identity_involution(cut_edge_count(n)));
    CHECK(Length(chi) == orbifold_euler_characteristic(orb) * Length(4));
    if (first) c0 = -chi - n, first = false;
    CHECK(chi == -n - c0);
    CHECK(genus(id) * 2 == n + c0 + 2);
    auto gl = closed_gluings(spec);
    CHECK_FALSE(gl.empty());
    for (auto& s : gl) {
      auto c = closed_surface_variant(spec, s);
      CHECK(consistency_issues(c).empty());
      CHECK(euler_characteristic(c) == -n - c0);
      for (auto& cell : c.cells)
        for (auto& sd : cell.sides) CHECK(sd.kind != SideKind::reflector);
    }
  }
  CHECK(c0 == 1);
  // Fixed-point-free gluings with degree-4 vertices: (n-2)!!.
  CHECK(closed_gluings(spec_n(3)).size() == 1);
  CHECK(closed_gluings(spec_n(5)).size() == 3);
  CHECK(closed_gluings(spec_n(7)).size() == 15);
  CHECK_THROWS_AS(closed_surface_variant(spec_n(4), identity_involution(6)), Error);
  CHECK_THROWS_AS(closed_surface_variant(spec_n(3), identity_involution(3)), Error);
  try {
    euler_characteristic(glue_sigma(spec_n(3), identity_involution(1)));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Status::not_surface);
  }
}

TEST_CASE("census") {
  auto rep = census(spec_n(1), 1, 6);
  CHECK(rep.c0 == 1);
  REQUIRE(rep.rows.size() == 6);
  for (auto& row : rep.rows) {
    CHECK(row.cut_edges == row.n / 2);
    CHECK(static_cast<long>(row.involutions) == involution_number(row.cut_edges));
    CHECK(row.classes == row.involutions);
    CHECK(row.halfspace_agrees);
    CHECK(row.has_genus == (row.n % 2 == 1));
    if (row.has_genus) {
      CHECK(row.genus == (row.n + rep.c0) / 2 + 1);
      CHECK(row.exp_bound == doctest::Approx(std::pow(row.genus, row.genus)));
    }
  }
  auto csv = census_csv(rep);
  CHECK(csv.rfind("# schema-version=1\nn,cut_edges,involutions,classes,genus,factorial_bound,exp_bound\n", 0) == 0);
  CHECK(csv.find("\n2,1,1,1,NA,NA,NA\n") != std::string::npos);
  CHECK(csv.find("\n5,2,2,2,4,24,256\n") != std::string::npos);
  CHECK(census_csv(census(spec_n(1), 1, 6, SigmaFilter::all, {}, 3)) == csv);

  auto tr = census(spec_n(1), 6, 6, SigmaFilter::transpositions);
  CHECK(tr.rows[0].involutions == 0);
  auto tr4 = census(spec_n(1), 4, 4, SigmaFilter::transpositions);
  CHECK(tr4.rows[0].involutions == 1);
  auto ex = census(spec_n(1), 6, 6, SigmaFilter::explicit_list, {parse_cycles("(1 3)", 3)});
  CHECK(ex.rows[0].involutions == 1);
  CHECK_THROWS_AS(census(spec_n(1), 1, kMaxCensusN + 1), Error);
  CHECK_THROWS_AS(census(spec_n(1), 3, 2), Error);
}
