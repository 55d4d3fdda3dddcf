#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surfcensus/involution.hpp"
#include "surfcensus/metricgraph.hpp"

namespace sc {

struct LabeledEdge {
  int src = 0, dst = 0;
  char label = 'a';  // 'a' or 'b'
};

// Finite cover of the bouquet of two circles; vertex i is v_{i+1}.
struct PointedCover {
  int num_vertices = 0;
  std::vector<LabeledEdge> edges;
  int base_edge = -1;  // b-edge whose interior holds the basepoint
};

// One outgoing and one incoming edge per label at every vertex, and connected.
bool covering_condition(const PointedCover& c);

// sigma acts on {0..n-1}. Basepoint on the b 1-cycle at v_{4n}.
PointedCover build_cover(int n, const Involution& sigma);
PointedCover initcover(int s);

// Cover with the basepoint edge cut open; the two new vertices are the boundary.
struct BoundaryGraph {
  int num_vertices = 0;
  std::vector<LabeledEdge> edges;
  std::vector<int> boundary;
};

BoundaryGraph cut_basepoint(const PointedCover& c);

// Ball of radius R in the universal cover, rooted at a lift of the first boundary vertex.
// Node 0 is the root; node k > 0 hangs from parent[k] by a lift of graph edge via[k].
struct TruncatedTree {
  BoundaryGraph graph;
  int radius = 0;
  std::vector<int> parent, via, proj, depth;
  std::vector<char> frontier;

  std::size_t size() const { return proj.size(); }
  bool is_boundary(int x) const;
};

constexpr std::size_t kMaxTreeNodes = 8'000'000;
int default_radius(int n);
int radius_guard(int n);
// Throws resource when R exceeds radius_guard(n) or the node budget.
TruncatedTree truncated_universal_cover(const BoundaryGraph& g, int R, int n);

enum class E1Rule {
  distance,  // endpoints equidistant from the boundary
  orbit,     // endpoints in one automorphism orbit, or edge touches the boundary
};

struct TreeInvariants {
  E1Rule rule = E1Rule::orbit;
  std::vector<char> E1, E2;  // per tree node k > 0, for the edge to its parent
  std::vector<int> d_a;      // per tree node; -1 if unreachable
  std::vector<std::vector<int>> V;  // V[i]: nodes with d_a == i
  std::size_t e2_mismatches = 0;    // tree edges where E2 disagrees with the a-lifts
};

// Label-blind. Under the orbit rule a mismatch throws invariant_violation.
TreeInvariants tree_invariants(const TruncatedTree& t, E1Rule rule = E1Rule::orbit);

// Transposition (i j) for every edge between V_{2i} and V_{2j}; throws malformed.
Involution recover_sigma(const TruncatedTree& t, const TreeInvariants& inv, int n);
Involution recover_sigma(const TruncatedTree& t, int n);

// Quotient of the a-lifts by the vertices of the b-component containing btilde.
MetricGraph collapse_to_bouquet(const PointedCover& c, int btilde);

struct GraphCount {
  std::uint64_t count = 0;
  std::uint64_t bound = 0;
  bool holds = true;
};

// Simple graphs on |V| labeled vertices with maximum degree <= n. |V| <= 5, n <= 4.
GraphCount count_bounded_degree_graphs(int vertices, int n);

std::string cover_to_json(const PointedCover& c);

}  // namespace sc
