#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "surfcensus/metricgraph.hpp"

using namespace sc;

namespace {

// Shortest simple path by exhaustive enumeration.
Length brute_distance(const MetricGraph& g, int s, int t) {
  bool have = false;
  Length best{0};
  std::vector<char> used(g.num_vertices, 0);
  std::function<void(int, Length)> go = [&](int v, Length acc) {
    if (v == t) {
      if (!have || acc < best) best = acc, have = true;
      return;
    }
    used[v] = 1;
    for (auto& e : g.edges)
      for (int side = 0; side < 2; ++side) {
        int a = side ? e.v : e.u, b = side ? e.u : e.v;
        if (a == v && !used[b]) go(b, acc + e.len);
      }
    used[v] = 0;
  };
  go(s, Length(0));
  return best;
}

MetricGraph random_graph(std::mt19937& rng, int n) {
  MetricGraph g;
  g.num_vertices = n;
  for (int v = 1; v < n; ++v) g.add_edge(static_cast<int>(rng() % v), v, Length(1 + rng() % 9, 1 + rng() % 3));
  int extra = static_cast<int>(rng() % 6);
  for (int i = 0; i < extra; ++i)
    g.add_edge(static_cast<int>(rng() % n), static_cast<int>(rng() % n), Length(1 + rng() % 9, 1 + rng() % 3));
  return g;
}

}  // namespace

TEST_CASE("distances") {
  MetricGraph g;
  g.num_vertices = 2;
  g.add_edge(0, 1, Length(7, 2));
  CHECK(distance(g, GraphPoint::at_vertex(0), GraphPoint::at_vertex(0)) == Length(0));
  CHECK(distance(g, GraphPoint::at_vertex(0), GraphPoint::at_vertex(1)) == Length(7, 2));
  CHECK(distance(g, GraphPoint::on_edge(0, Length(1)), GraphPoint::on_edge(0, Length(3))) == Length(2));

  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    auto h = random_graph(rng, 2 + static_cast<int>(rng() % 7));
    for (int s = 0; s < h.num_vertices; ++s)
      for (int t = 0; t < h.num_vertices; ++t)
        CHECK(distance(h, GraphPoint::at_vertex(s), GraphPoint::at_vertex(t)) == brute_distance(h, s, t));
    // Triangle inequality and symmetry on edge points.
    std::vector<GraphPoint> pts;
    for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) pts.push_back(GraphPoint::on_edge(e, h.edges[e].len / 3));
    for (int v = 0; v < h.num_vertices; ++v) pts.push_back(GraphPoint::at_vertex(v));
    const size_t P = pts.size();
    std::vector<Length> d(P * P);
    for (size_t a = 0; a < P; ++a)
      for (size_t b = 0; b < P; ++b) d[a * P + b] = distance(h, pts[a], pts[b]);
    for (size_t a = 0; a < P; ++a)
      for (size_t b = 0; b < P; ++b) {
        CHECK(d[a * P + b] == d[b * P + a]);
        for (size_t i = 0; i < P; ++i) CHECK(d[a * P + b] <= d[a * P + i] + d[i * P + b]);
      }
  }
  MetricGraph split;
  split.num_vertices = 2;
  CHECK_THROWS_AS(distance(split, GraphPoint::at_vertex(0), GraphPoint::at_vertex(1)), Error);
}

TEST_CASE("thresholds") {
  auto p = thresholds(2, 1);
  CHECK(p.u == 336);
  CHECK(p.boundary_regime);
  auto q = thresholds(2, 2);
  CHECK(q.k_prime == 2);
  CHECK(q.c_prime == 12);
  CHECK(q.s == 4);
  CHECK_FALSE(q.boundary_regime);
  for (double k = 1.25; k <= 5; k += 0.25)
    for (double c = 1.25; c <= 5; c += 0.25) {
      auto r = thresholds(k, c);
      CHECK(r.t < r.u / 2);
      CHECK(r.t_prime < r.u / 2);
      CHECK(r.t == doctest::Approx(3 * k * k * (k * k + 2) * c));
    }
  CHECK_THROWS_AS(thresholds(0, 1), Error);
  CHECK_THROWS_AS(thresholds(2, -1), Error);
}

TEST_CASE("isomorphism") {
  auto g = pool_graph("Q3");
  CHECK(is_isomorphic(g, g));
  MetricGraph path, cycle;
  path.num_vertices = cycle.num_vertices = 3;
  path.add_edge(0, 1, Length(1));
  path.add_edge(1, 2, Length(1));
  cycle = path;
  cycle.add_edge(2, 0, Length(1));
  path.num_vertices = 4;
  path.add_edge(2, 3, Length(1));
  CHECK_FALSE(is_isomorphic(path, cycle));
  CHECK_FALSE(is_isomorphic(pool_graph("K33"), pool_graph("prism")));
  CHECK_FALSE(is_isomorphic(pool_graph("Q3"), pool_graph("wagner")));
  std::mt19937 rng(9);
  for (auto& name : pool_names()) {
    auto a = pool_graph(name);
    for (int t = 0; t < 5; ++t) {
      std::vector<int> perm(a.num_vertices);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      MetricGraph b;
      b.num_vertices = a.num_vertices;
      for (auto& e : a.edges) b.add_edge(perm[e.v], perm[e.u], e.len);
      CHECK(is_isomorphic(a, b));
    }
  }
  // Loops and multi-edges.
  MetricGraph m1, m2;
  m1.num_vertices = m2.num_vertices = 2;
  m1.add_edge(0, 0, Length(1));
  m1.add_edge(0, 1, Length(1));
  m1.add_edge(0, 1, Length(1));
  m2.add_edge(1, 1, Length(1));
  m2.add_edge(1, 0, Length(1));
  m2.add_edge(0, 1, Length(1));
  CHECK(is_isomorphic(m1, m2));
}

TEST_CASE("quasi-isometry witnesses") {
  auto g = pool_graph("K4");
  for (auto& e : g.edges) e.len = Length(3);
  CHECK(search_quasi_isometry(g, g, 1.1, 1.1).has_value());
  auto scaled = g;
  for (auto& e : scaled.edges) e.len *= Length(6, 5);
  auto w = search_quasi_isometry(g, scaled, 1.2, 1.1);
  REQUIRE(w.has_value());
  CHECK(w->vertex_map == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("rigidity suite") {
  auto suite = run_qi_suite(1.25, 1.25, 20, 42);
  CHECK(suite.rows.size() == 40);
  CHECK(suite.non_isomorphic_with_witness == 0);
  CHECK(suite.isomorphic_without_witness == 0);
  for (size_t i = 0; i < 20; ++i) CHECK_FALSE(suite.rows[i].isomorphic);
  for (size_t i = 20; i < 40; ++i) CHECK(suite.rows[i].isomorphic);
}
