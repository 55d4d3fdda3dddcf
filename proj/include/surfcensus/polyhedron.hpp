#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "surfcensus/error.hpp"

namespace sc {

// Combinatorial polyhedron. Each face is a cyclic list of edge ids,
// counter-clockwise seen from outside; edges[e] holds the two faces of e.
class Polyhedron {
 public:
  Polyhedron() = default;
  Polyhedron(std::vector<std::vector<int>> faces,
             std::vector<std::array<int, 2>> edges);

  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }

  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::vector<int>& face(int f) const { return faces_.at(f); }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  // Each vertex as the sorted list of its edges; length is the degree.
  const std::vector<std::vector<int>>& vertices() const { return vertices_; }

  // Vertex at corner i of face f: between f[i] and f[i+1].
  int corner_vertex(int f, int i) const;
  const std::vector<int>& face_vertices(int f) const { return face_vertices_.at(f); }

  int other_face(int e, int f) const;
  // Neighbouring face across edge position i of f.
  int neighbor(int f, int i) const { return other_face(faces_[f][i], f); }
  bool adjacent(int f, int g) const;
  // Position of the edge shared with g in f's cycle, or -1.
  int shared_position(int f, int g) const;
  bool share_vertex(int f, int g, int h) const;

  // False when incidences are not a consistently oriented closed surface;
  // derived vertex data is then partial.
  bool well_formed() const { return well_formed_; }

 private:
  void derive();

  std::vector<std::vector<int>> faces_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::vector<int>> vertices_;
  std::vector<std::vector<int>> corner_;        // [f][i] -> vertex
  std::vector<std::vector<int>> face_vertices_;
  std::vector<std::vector<int>> adj_pos_;       // [f][g] -> position or -1
  bool well_formed_ = false;
};

struct Issue {
  enum Kind { structural, coxeter } kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;
  bool ok() const { return issues.empty(); }
  bool structural_failure() const;
};

ValidationReport validate_right_angled(const Polyhedron& P);

Polyhedron dodecahedron();
// Cube with square faces; used as a negative example.
Polyhedron cube();

bool is_face_loop(const Polyhedron& P, const std::vector<int>& faces);

bool is_face_disk(const Polyhedron& P, const std::vector<int>& face_set);

struct FaceDisk {
  std::vector<int> faces;            // sorted
  std::vector<int> boundary_edges;   // cyclic, following the disk orientation
  std::vector<int> transverse;       // cyclic, consecutive repeats collapsed
  std::vector<int> boundary_vertices;
  // Boundary vertices touched by exactly one face of the disk.
  int degree_two_vertices = 0;
};

// Throws invalid_input when face_set is not a face disk.
FaceDisk make_face_disk(const Polyhedron& P, std::vector<int> face_set);

bool satisfies_convexity(const Polyhedron& P, const FaceDisk& D);

// Edges of the closed subcomplex spanned by the faces.
int closed_edge_count(const Polyhedron& P, const std::vector<int>& faces);

struct GlueResult {
  Polyhedron poly;
  std::vector<int> face_map1;  // old face of P1 -> new face, -1 if removed
  std::vector<int> face_map2;
};

// Glue P1 to P2 along F1 and F2; edge F1[i] meets F2[(s - i) mod k].
GlueResult glue(const Polyhedron& P1, int F1, const Polyhedron& P2, int F2, int s);
Polyhedron mirror(const Polyhedron& P);
// Double across face F (the second copy is the mirror image).
GlueResult double_across(const Polyhedron& P, int F);

using CanonicalForm = std::vector<std::vector<int>>;
CanonicalForm canonical_form(const Polyhedron& P);

int c_of_P(const Polyhedron& P, int workers = 1);

struct DegreeLemmaReport {
  std::uint64_t subsets = 0;
  std::uint64_t disks = 0;
  std::uint64_t small_boundary = 0;  // disks with |V(D,2)| <= 4
  int min_faces_small = -1;          // fewest faces among those
  bool holds = true;
};

DegreeLemmaReport degree_lemma_report(const Polyhedron& P, int workers = 1);
bool check_degree_lemma(const Polyhedron& P, int workers = 1);

struct DiskMatching {
  int T1 = -1;  // face of P1 transverse to D1
  int T2 = -1;  // face of P2 transverse to D2
  int shift = 0;
};

struct AmalgamResult {
  GlueResult glued;
  FaceDisk disk;
};

AmalgamResult amalgamate_disks(const Polyhedron& P1, const FaceDisk& D1,
                               const Polyhedron& P2, const FaceDisk& D2,
                               const DiskMatching& m);

// Shift that carries the run of D1 on T1 onto the run of D2 on T2, or -1.
int matching_shift(const Polyhedron& P1, const FaceDisk& D1, int T1,
                   const Polyhedron& P2, const FaceDisk& D2, int T2);

std::string to_json(const Polyhedron& P);
// Throws malformed on parse errors, structural when incidences are broken.
Polyhedron polyhedron_from_json(const std::string& text);
Polyhedron load_polyhedron(const std::string& name_or_path);

}  // namespace sc
