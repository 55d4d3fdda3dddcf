#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "surfcensus/coxeter.hpp"
#include "surfcensus/involution.hpp"
#include "surfcensus/metricgraph.hpp"
#include "surfcensus/polyhedron.hpp"

namespace sc {

struct DiskSpec {
  Polyhedron host;
  int F1 = -1;  // pentagon
  int F2 = -1;  // adjacent to F1
  int n = 1;
};

// First pentagon and its neighbour across edge position 0.
DiskSpec default_disk_spec(const Polyhedron& P, int n);

// Faces around F1 named from F2: A, T, F2, N3, L in cyclic order.
struct ChainFaces {
  int A = -1, T = -1, B = -1, N3 = -1, L = -1;
};
ChainFaces chain_faces(const DiskSpec& spec);

// Chamber of the k-th F1 copy (0-based): e, A, AB, ABA, ...
Word chain_chamber(const ChainFaces& cf, int k);
// Cut runs are the L-sides of copies (2i, 2i+1).
int cut_edge_count(int n);

struct BuiltDisk {
  Polyhedron hat;          // n copies of the host
  FaceDisk disk;           // F1 union plus F2 in hat
  int f1_face = -1, f2_face = -1;
  std::vector<int> cut_edges;  // per cut, its edge of hat
};

BuiltDisk build_disk(const DiskSpec& spec);

enum class SideKind { internal, reflector, glued, boundary };

struct CellSide {
  SideKind kind = SideKind::boundary;
  int cell = -1, side = -1;  // partner for internal and glued sides
  Word element;              // glued: carries this cell next to the partner
  int run = -1;              // boundary run of D, -1 for internal sides
};

// Face of the host in a chamber. Side i lies on edge face[i].
struct Cell {
  Word chamber;
  int face = -1;
  int copy = 0;
  std::vector<CellSide> sides;
};

struct Run {
  Wall wall;
  int face = -1;  // host face carrying the wall at the run's chamber
  std::vector<std::pair<int, int>> sides;  // (cell, side) in boundary order
  int cut = -1;   // cut index or -1
};

struct OrbifoldComplex {
  std::shared_ptr<const CoxeterGroup> group;
  Polyhedron host;
  int n = 0, F1 = -1, F2 = -1;
  int copies = 1;
  std::vector<Cell> cells;  // cells of copy 0 come first
  std::vector<Run> runs;    // boundary of D, cyclic
  Involution sigma;
};

// D with every boundary side a reflector; sigma acts on the cut runs.
OrbifoldComplex glue_sigma(const DiskSpec& spec, const Involution& sigma);

// Cells listed by (chamber, face); adjacency is read off the tessellation.
// Sides with no neighbour become reflectors. Used for hand-built complexes.
OrbifoldComplex complex_from_cells(const Polyhedron& host, const std::vector<std::pair<Word, int>>& cells);

// Structural checks on pairings and immersion tags; empty when consistent.
std::vector<std::string> consistency_issues(const OrbifoldComplex& c);

struct VertexStar {
  int host_vertex = -1;
  std::vector<int> cells;
  bool interior = true;
  int degree = 0;
};
std::vector<VertexStar> vertex_stars(const OrbifoldComplex& c);
std::vector<int> orbifold_vertex_degrees(const OrbifoldComplex& c);

bool check_injectivity_hypotheses(const Polyhedron& hat, const FaceDisk& D, const OrbifoldComplex& c);

struct Development {
  int depth = 0;
  std::vector<Word> translates;               // placements of D
  std::vector<std::pair<Word, int>> cells;    // (canonical chamber, face)
  std::vector<Wall> transverse;               // cyclic
  bool embedded = true;
  bool convex = true;
};

constexpr int kMaxDevelopDepth = 4;
// Throws invariant_violation when the translates overlap or fail convexity.
Development develop(const OrbifoldComplex& c, int depth);

struct HalfSpaceInvariant {
  std::vector<Wall> walls;   // cyclic, H_i meets H_{i+1}
  std::vector<int> partner;  // -1 reflector, else run index glued to
  bool adjacency_ok = false;
  std::string canonical() const;
};

HalfSpaceInvariant halfspace_invariant(const OrbifoldComplex& c);

// c2's disk is placed at offset, a word in c2's own group elements.
bool inequivalent(const OrbifoldComplex& c1, const OrbifoldComplex& c2, const Word& offset = {});

// Generator carrying D across run j.
Word run_generator(const OrbifoldComplex& c, int j);

int euler_characteristic(const OrbifoldComplex& c);
int genus(const OrbifoldComplex& c);
Length orbifold_euler_characteristic(const OrbifoldComplex& c);

// Four copies of D glued by a (Z/2)^2 colouring of the runs. sigma acts on
// the 2n-2 cut instances; a fixed point keeps its standard partner.
OrbifoldComplex closed_surface_variant(const DiskSpec& spec, const Involution& sigma);
int closed_cut_count(int n);
// Fixed-point-free sigma for which every vertex has degree 4.
std::vector<Involution> closed_gluings(const DiskSpec& spec);

enum class SigmaFilter { all, transpositions, explicit_list };

struct CensusClass {
  Involution sigma;
  std::string invariant;
};

struct CensusRow {
  int n = 0;
  int cut_edges = 0;
  std::size_t involutions = 0;
  std::size_t classes = 0;
  bool has_genus = false;
  int genus = 0;
  double factorial_bound = 0;  // (2g - c0 - 3)!
  double exp_bound = 0;        // e^{g log g}
  std::size_t prefilter_collisions = 0;
  bool halfspace_agrees = true;
  // Closed variant, odd n.
  std::size_t closed_gluings = 0;
  std::size_t closed_classes = 0;
  double transposition_target = 0;  // (n-1)!
  std::vector<CensusClass> detail;
};

struct CensusReport {
  int c0 = 0;
  std::vector<CensusRow> rows;
};

constexpr int kMaxCensusN = 6;
CensusReport census(const DiskSpec& base, int n_lo, int n_hi, SigmaFilter filter = SigmaFilter::all,
                    const std::vector<Involution>& explicit_sigmas = {}, int workers = 1);

std::string census_csv(const CensusReport& r);
std::string census_detail(const CensusReport& r);

}  // namespace sc
