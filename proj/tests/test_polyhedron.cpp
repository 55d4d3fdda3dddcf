#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "surfcensus/polyhedron.hpp"

using namespace sc;

namespace {

// Cell counts straight from the incidence lists.
struct Cells {
  int V, E, F;
};

Cells count_cells(const Polyhedron& P) {
  std::set<int> es;
  for (auto& f : P.faces()) es.insert(f.begin(), f.end());
  std::set<int> vs;
  for (int f = 0; f < P.num_faces(); ++f)
    for (size_t i = 0; i < P.face(f).size(); ++i) vs.insert(P.corner_vertex(f, static_cast<int>(i)));
  return {static_cast<int>(vs.size()), static_cast<int>(es.size()), P.num_faces()};
}

std::vector<std::vector<int>> disks_up_to(const Polyhedron& P, int max_faces) {
  std::set<std::vector<int>> out;
  std::vector<std::vector<int>> layer;
  for (int f = 0; f < P.num_faces(); ++f) layer.push_back({f});
  for (int sz = 1; sz <= max_faces && !layer.empty(); ++sz) {
    std::set<std::vector<int>> next;
    for (auto& s : layer) {
      if (is_face_disk(P, s)) out.insert(s);
      for (int f : s)
        for (size_t i = 0; i < P.face(f).size(); ++i) {
          int g = P.neighbor(f, static_cast<int>(i));
          if (std::find(s.begin(), s.end(), g) != s.end()) continue;
          auto t = s;
          t.push_back(g);
          std::sort(t.begin(), t.end());
          next.insert(t);
        }
    }
    layer.assign(next.begin(), next.end());
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("dodecahedron cell counts") {
  auto P = dodecahedron();
  auto c = count_cells(P);
  CHECK(c.F == 12);
  CHECK(c.E == 30);
  CHECK(c.V == 20);
  CHECK(c.V - c.E + c.F == 2);
  CHECK(5 * c.F == 2 * c.E);
  CHECK(3 * c.V == 2 * c.E);
  CHECK(P.well_formed());
  CHECK(validate_right_angled(P).ok());
  for (int f = 0; f < 12; ++f) {
    std::set<int> nb;
    for (int i = 0; i < 5; ++i) nb.insert(P.neighbor(f, i));
    CHECK(nb.size() == 5);
  }
}

TEST_CASE("validator failures") {
  auto rep = validate_right_angled(cube());
  REQUIRE_FALSE(rep.ok());
  CHECK_FALSE(rep.structural_failure());
  bool found = false;
  for (auto& i : rep.issues) found |= i.message == "face with 4 edges";
  CHECK(found);

  auto P = dodecahedron();
  auto faces = P.faces();
  auto edges = P.edges();
  edges[0][1] = edges[0][0];
  auto bad = validate_right_angled(Polyhedron(faces, edges));
  CHECK(bad.structural_failure());

  auto flipped = P.faces();
  std::reverse(flipped[3].begin(), flipped[3].end());
  CHECK(validate_right_angled(Polyhedron(flipped, P.edges())).structural_failure());
}

TEST_CASE("face loops") {
  auto P = dodecahedron();
  for (int f = 0; f < 12; ++f) {
    std::vector<int> ring;
    for (int i = 0; i < 5; ++i) ring.push_back(P.neighbor(f, i));
    CHECK(is_face_loop(P, ring));
  }
  int v = 0;
  std::vector<int> star;
  for (int f = 0; f < 12; ++f)
    for (int x : P.face_vertices(f))
      if (x == v) star.push_back(f);
  REQUIRE(star.size() == 3);
  CHECK_FALSE(is_face_loop(P, star));
  CHECK_FALSE(is_face_loop(P, {0, P.neighbor(0, 0)}));
  CHECK_THROWS_AS(is_face_loop(P, {0, 1, 0}), Error);
}

TEST_CASE("face disks and convexity") {
  auto P = dodecahedron();
  CHECK(is_face_disk(P, {0}));
  CHECK_FALSE(is_face_disk(P, {}));
  std::vector<int> all(12);
  std::iota(all.begin(), all.end(), 0);
  CHECK_FALSE(is_face_disk(P, all));

  auto single = make_face_disk(P, {0});
  CHECK(single.transverse.size() == 5);
  CHECK(satisfies_convexity(P, single));
  for (int i = 0; i < 5; ++i) {
    auto two = make_face_disk(P, {0, P.neighbor(0, i)});
    CHECK(satisfies_convexity(P, two));
    CHECK(two.degree_two_vertices == 6);
  }
  // Three faces around a vertex: the six transverse faces form a loop.
  std::vector<int> star;
  for (int f = 0; f < 12; ++f)
    for (int x : P.face_vertices(f))
      if (x == 0) star.push_back(f);
  auto tri = make_face_disk(P, star);
  CHECK(tri.transverse.size() == 6);
  CHECK(satisfies_convexity(P, tri));

  std::vector<int> co;
  for (int f = 1; f < 12; ++f) co.push_back(f);
  auto cd = make_face_disk(P, co);
  CHECK(cd.degree_two_vertices == 0);
  FaceDisk whole;
  whole.faces = all;
  CHECK_THROWS_AS(satisfies_convexity(P, whole), Error);
}

TEST_CASE("complement of two adjacent faces") {
  auto P = dodecahedron();
  int g = P.neighbor(0, 0);
  std::vector<int> co;
  for (int f = 0; f < 12; ++f)
    if (f != 0 && f != g) co.push_back(f);
  auto D = make_face_disk(P, co);
  CHECK(D.degree_two_vertices == 2);
}

TEST_CASE("double across a face") {
  auto P = dodecahedron();
  auto d = double_across(P, 0);
  auto c = count_cells(d.poly);
  // Two copies lose F; the five neighbours fuse pairwise.
  CHECK(c.F == 2 * 12 - 2 - 5);
  CHECK(c.E == 2 * 30 - 2 * 5 - 5);
  CHECK(c.V == 2 * 20 - 2 * 5);
  CHECK(c.V - c.E + c.F == 2);
  CHECK(d.poly.well_formed());
  CHECK(validate_right_angled(d.poly).ok());
  for (auto& v : d.poly.vertices()) CHECK(v.size() == 3);
  for (int f = 0; f < 12; ++f)
    if (f != 0) CHECK(d.face_map1[f] >= 0);
}

TEST_CASE("canonical form") {
  auto P = dodecahedron();
  auto cf = canonical_form(P);
  CHECK(cf == canonical_form(mirror(P)));
  // Relabel faces and edges.
  std::mt19937 rng(7);
  std::vector<int> fp(12), ep(30);
  std::iota(fp.begin(), fp.end(), 0);
  std::iota(ep.begin(), ep.end(), 0);
  std::shuffle(fp.begin(), fp.end(), rng);
  std::shuffle(ep.begin(), ep.end(), rng);
  std::vector<std::vector<int>> faces(12);
  std::vector<std::array<int, 2>> edges(30);
  for (int f = 0; f < 12; ++f) {
    for (int e : P.face(f)) faces[fp[f]].push_back(ep[e]);
    std::rotate(faces[fp[f]].begin(), faces[fp[f]].begin() + f % 5, faces[fp[f]].end());
  }
  for (int e = 0; e < 30; ++e) edges[ep[e]] = {fp[P.edges()[e][0]], fp[P.edges()[e][1]]};
  CHECK(canonical_form(Polyhedron(faces, edges)) == cf);

  // Doubling twice across mirror-image faces versus doubling the double.
  auto d1 = double_across(P, 0);
  int far = d1.face_map1[P.neighbor(0, 0)];
  auto twice = double_across(d1.poly, far);
  auto dd = double_across(double_across(mirror(P), 0).poly,
                          double_across(mirror(P), 0).face_map1[P.neighbor(0, 0)]);
  CHECK(canonical_form(twice.poly) == canonical_form(dd.poly));
  CHECK(canonical_form(d1.poly) != cf);
}

TEST_CASE("c(P) against subset enumeration") {
  auto P = dodecahedron();
  int best = 0;
  for (int m = 1; m < 4096; ++m) {
    std::vector<int> s;
    for (int f = 0; f < 12; ++f)
      if (m >> f & 1) s.push_back(f);
    if (is_face_disk(P, s)) best = std::max(best, closed_edge_count(P, s));
  }
  CHECK(c_of_P(P, 1) == best);
  CHECK(c_of_P(P, 4) == best);
  CHECK(best == 30);
  CHECK(best >= 5);
}

TEST_CASE("degree lemma") {
  auto P = dodecahedron();
  int small_min = 100;
  std::uint64_t disks = 0, small = 0;
  for (int m = 1; m < 4096; ++m) {
    std::vector<int> s;
    for (int f = 0; f < 12; ++f)
      if (m >> f & 1) s.push_back(f);
    if (!is_face_disk(P, s)) continue;
    ++disks;
    if (s.size() == 12) continue;
    if (make_face_disk(P, s).degree_two_vertices <= 4) {
      ++small;
      small_min = std::min<int>(small_min, static_cast<int>(s.size()));
    }
  }
  auto rep = degree_lemma_report(P, 3);
  CHECK(rep.subsets == 4096);
  CHECK(rep.disks == disks);
  CHECK(rep.small_boundary == small);
  CHECK(rep.min_faces_small == small_min);
  CHECK(small_min > 6);
  CHECK(rep.holds);
  CHECK(check_degree_lemma(double_across(P, 0).poly, 4));
}

TEST_CASE("amalgamation keeps convexity") {
  std::mt19937 rng(2024);
  std::vector<Polyhedron> hosts{dodecahedron(), double_across(dodecahedron(), 0).poly};
  std::vector<std::vector<FaceDisk>> convex(hosts.size());
  for (size_t h = 0; h < hosts.size(); ++h)
    for (auto& s : disks_up_to(hosts[h], 3)) {
      auto D = make_face_disk(hosts[h], s);
      if (satisfies_convexity(hosts[h], D)) convex[h].push_back(D);
    }
  int done = 0, attempts = 0;
  while (done < 1000 && attempts < 200000) {
    ++attempts;
    size_t h1 = rng() % 2, h2 = rng() % 2;
    auto& D1 = convex[h1][rng() % convex[h1].size()];
    auto& D2 = convex[h2][rng() % convex[h2].size()];
    int T1 = D1.transverse[rng() % D1.transverse.size()];
    int T2 = D2.transverse[rng() % D2.transverse.size()];
    int s = matching_shift(hosts[h1], D1, T1, hosts[h2], D2, T2);
    if (s < 0) {
      if (hosts[h1].face(T1).size() != hosts[h2].face(T2).size())
        CHECK_THROWS_AS(amalgamate_disks(hosts[h1], D1, hosts[h2], D2, {T1, T2, 0}), Error);
      continue;
    }
    auto r = amalgamate_disks(hosts[h1], D1, hosts[h2], D2, {T1, T2, s});
    CHECK(r.glued.poly.well_formed());
    CHECK(is_face_disk(r.glued.poly, r.disk.faces));
    CHECK(satisfies_convexity(r.glued.poly, r.disk));
    ++done;
  }
  CHECK(done == 1000);
}

TEST_CASE("json round trip") {
  auto P = double_across(dodecahedron(), 3).poly;
  auto Q = polyhedron_from_json(to_json(P));
  CHECK(canonical_form(Q) == canonical_form(P));
  CHECK(Q.faces() == P.faces());
  CHECK_THROWS_AS(polyhedron_from_json("{\"faces\": 3"), Error);
  try {
    polyhedron_from_json("[]");
  } catch (const Error& e) {
    CHECK(e.code() == Status::malformed);
  }
}
