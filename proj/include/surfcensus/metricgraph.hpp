#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "surfcensus/error.hpp"

namespace sc {

using Length = boost::rational<std::int64_t>;

struct MetricEdge {
  int u = 0, v = 0;
  Length len{1};
};

// Undirected graph with positive rational edge lengths; loops and multi-edges allowed.
struct MetricGraph {
  int num_vertices = 0;
  std::vector<MetricEdge> edges;

  void add_edge(int u, int v, Length len);
  std::vector<int> degrees() const;
};

// A vertex, or a point at distance t from edges[edge].u along that edge.
struct GraphPoint {
  int vertex = -1;
  int edge = -1;
  Length t{0};

  static GraphPoint at_vertex(int v) { return {v, -1, Length(0)}; }
  static GraphPoint on_edge(int e, Length t) { return {-1, e, t}; }
};

// Throws invalid_input on bad lengths or points, and when x and y are not connected.
Length distance(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y);
std::vector<Length> distances_from(const MetricGraph& g, const GraphPoint& x);
bool connected(const MetricGraph& g);

struct QIParams {
  double k = 0, c = 0;
  double k_prime = 0, c_prime = 0, s = 0;
  double u = 0;        // rigidity threshold
  double t = 0;        // vertex neighbourhood radius under f
  double t_prime = 0;  // same under the quasi-inverse
  bool boundary_regime = false;  // k <= 1 or c <= 1
};

// Requires k, c >= 1.
QIParams thresholds(double k, double c);

struct QIWitness {
  std::vector<int> vertex_map;  // g1 vertex -> g2 vertex
  std::size_t samples = 0;
};

constexpr std::size_t kMaxQISamples = 20000;

// Searches vertex-anchored maps g1 -> g2 extended along geodesics; samples each
// edge at `density` points per unit length. An empty result is evidence only.
std::optional<QIWitness> search_quasi_isometry(const MetricGraph& g1, const MetricGraph& g2,
                                               double k, double c, int density = 2);

// Combinatorial isomorphism; lengths ignored. Up to 12 vertices.
bool is_isomorphic(const MetricGraph& g1, const MetricGraph& g2);
// Canonical adjacency-count matrix, row-major.
std::vector<int> canonical_adjacency(const MetricGraph& g);

// Small graphs of minimum degree 3, unit lengths: K4, K33, prism, Q3, wagner, K5, octahedron.
const std::vector<std::string>& pool_names();
MetricGraph pool_graph(const std::string& name);

struct QISuiteRow {
  std::string g1, g2;
  bool isomorphic = false;
  bool witness = false;
};

struct QISuite {
  QIParams params;
  std::vector<QISuiteRow> rows;
  int non_isomorphic_with_witness = 0;
  int isomorphic_without_witness = 0;
};

// `pairs` non-isomorphic and `pairs` isomorphic pairs, integer lengths in [u+1, u+10].
QISuite run_qi_suite(double k, double c, int pairs, std::uint64_t seed, int density = 2);

}  // namespace sc
