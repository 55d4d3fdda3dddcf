#include "surfcensus/polyhedron.hpp"

#include <algorithm>
#include <bitset>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace sc {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

int mod(int a, int k) { return ((a % k) + k) % k; }

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::invalid_input: return "invalid_input";
    case Status::structural: return "structural";
    case Status::validation: return "validation";
    case Status::resource: return "resource";
    case Status::construction: return "construction";
    case Status::invariant_violation: return "invariant_violation";
    case Status::malformed: return "malformed";
    case Status::not_surface: return "not_surface";
    case Status::io: return "io";
  }
  return "unknown";
}

Polyhedron::Polyhedron(std::vector<std::vector<int>> faces,
                       std::vector<std::array<int, 2>> edges)
    : faces_(std::move(faces)), edges_(std::move(edges)) {
  derive();
}

void Polyhedron::derive() {
  well_formed_ = false;
  const int F = num_faces(), E = num_edges();
  for (auto& f : faces_)
    for (int e : f)
      if (e < 0 || e >= E) fail(Status::invalid_input, "edge id out of range");
  for (auto& e : edges_)
    for (int f : e)
      if (f < 0 || f >= F) fail(Status::invalid_input, "face id out of range");

  adj_pos_.assign(F, std::vector<int>(F, -1));
  std::vector<int> seen(E, 0);
  bool ok = true;
  for (int f = 0; f < F; ++f) {
    if (faces_[f].empty()) ok = false;
    for (int i = 0; i < static_cast<int>(faces_[f].size()); ++i) {
      int e = faces_[f][i];
      ++seen[e];
      if (edges_[e][0] != f && edges_[e][1] != f) ok = false;
    }
  }
  for (int e = 0; e < E; ++e)
    if (seen[e] != 2 || edges_[e][0] == edges_[e][1]) ok = false;
  if (!ok) return;

  for (int f = 0; f < F; ++f)
    for (int i = 0; i < static_cast<int>(faces_[f].size()); ++i) {
      int g = other_face(faces_[f][i], f);
      if (adj_pos_[f][g] < 0) adj_pos_[f][g] = i;
    }

  std::vector<int> base(F + 1, 0);
  for (int f = 0; f < F; ++f) base[f + 1] = base[f] + static_cast<int>(faces_[f].size());
  UnionFind uf(base[F]);
  auto pos_in = [&](int g, int e) {
    auto& c = faces_[g];
    return static_cast<int>(std::find(c.begin(), c.end(), e) - c.begin());
  };
  for (int f = 0; f < F; ++f) {
    int k = static_cast<int>(faces_[f].size());
    for (int i = 0; i < k; ++i) {
      int e = faces_[f][i];
      int g = other_face(e, f);
      int j = pos_in(g, e);
      int kg = static_cast<int>(faces_[g].size());
      uf.unite(base[f] + i, base[g] + mod(j - 1, kg));
    }
  }
  std::map<int, int> vid;
  corner_.assign(F, {});
  for (int f = 0; f < F; ++f) {
    int k = static_cast<int>(faces_[f].size());
    corner_[f].resize(k);
    for (int i = 0; i < k; ++i) {
      int r = uf.find(base[f] + i);
      auto it = vid.find(r);
      if (it == vid.end()) it = vid.emplace(r, static_cast<int>(vid.size())).first;
      corner_[f][i] = it->second;
    }
  }
  const int V = static_cast<int>(vid.size());
  std::vector<std::set<int>> vedges(V);
  std::vector<int> corners(V, 0);
  for (int f = 0; f < F; ++f) {
    int k = static_cast<int>(faces_[f].size());
    for (int i = 0; i < k; ++i) {
      int v = corner_[f][i];
      ++corners[v];
      vedges[v].insert(faces_[f][i]);
      vedges[v].insert(faces_[f][(i + 1) % k]);
    }
  }
  vertices_.assign(V, {});
  for (int v = 0; v < V; ++v) {
    vertices_[v].assign(vedges[v].begin(), vedges[v].end());
    if (static_cast<int>(vertices_[v].size()) != corners[v]) ok = false;
  }
  // Orientation: the two faces of an edge must traverse it in opposite directions.
  for (int f = 0; f < F && ok; ++f) {
    int k = static_cast<int>(faces_[f].size());
    for (int i = 0; i < k; ++i) {
      int e = faces_[f][i];
      int g = other_face(e, f);
      int j = pos_in(g, e);
      int kg = static_cast<int>(faces_[g].size());
      int a = corner_[f][mod(i - 1, k)], b = corner_[f][i];
      if (a == b || corner_[g][j] != a || corner_[g][mod(j - 1, kg)] != b) {
        ok = false;
        break;
      }
    }
  }
  face_vertices_.assign(F, {});
  for (int f = 0; f < F; ++f) {
    face_vertices_[f] = corner_[f];
    std::sort(face_vertices_[f].begin(), face_vertices_[f].end());
  }
  well_formed_ = ok;
}

int Polyhedron::corner_vertex(int f, int i) const {
  const auto& c = corner_.at(f);
  return c[mod(i, static_cast<int>(c.size()))];
}

int Polyhedron::other_face(int e, int f) const {
  const auto& p = edges_.at(e);
  return p[0] == f ? p[1] : p[0];
}

bool Polyhedron::adjacent(int f, int g) const {
  return f != g && adj_pos_.at(f).at(g) >= 0;
}

int Polyhedron::shared_position(int f, int g) const { return adj_pos_.at(f).at(g); }

bool Polyhedron::share_vertex(int f, int g, int h) const {
  const auto &a = face_vertices_.at(f), &b = face_vertices_.at(g), &c = face_vertices_.at(h);
  for (int v : a)
    if (std::binary_search(b.begin(), b.end(), v) && std::binary_search(c.begin(), c.end(), v))
      return true;
  return false;
}

bool ValidationReport::structural_failure() const {
  return std::any_of(issues.begin(), issues.end(),
                     [](const Issue& i) { return i.kind == Issue::structural; });
}

ValidationReport validate_right_angled(const Polyhedron& P) {
  ValidationReport rep;
  std::set<std::string> seen_msg;
  auto add = [&](Issue::Kind k, std::string m) {
    if (seen_msg.insert(m).second) rep.issues.push_back({k, std::move(m)});
  };
  const int F = P.num_faces(), E = P.num_edges();
  std::vector<int> occ(E, 0);
  for (int f = 0; f < F; ++f)
    for (int e : P.face(f)) ++occ[e];
  for (int e = 0; e < E; ++e) {
    const auto& pr = P.edges()[e];
    if (occ[e] != 2)
      add(Issue::structural, "edge " + std::to_string(e) + " borders " +
                                 std::to_string(occ[e]) + " faces");
    else if (pr[0] == pr[1])
      add(Issue::structural, "edge " + std::to_string(e) + " borders 1 face");
    else {
      int hits = 0;
      for (int f : pr)
        hits += static_cast<int>(std::count(P.face(f).begin(), P.face(f).end(), e));
      if (hits != 2)
        add(Issue::structural, "edge " + std::to_string(e) + " incidence mismatch");
    }
  }
  if (!rep.issues.empty()) return rep;
  if (!P.well_formed()) {
    add(Issue::structural, "inconsistent face orientation");
    return rep;
  }
  std::vector<int> comp(F, -1);
  std::vector<int> stack{0};
  if (F > 0) comp[0] = 0;
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int g = 0; g < F; ++g)
      if (comp[g] < 0 && P.adjacent(f, g)) {
        comp[g] = 0;
        stack.push_back(g);
      }
  }
  if (std::count(comp.begin(), comp.end(), -1) > 0) add(Issue::structural, "complex is disconnected");
  int chi = P.num_vertices() - E + F;
  if (chi != 2)
    add(Issue::structural, "Euler characteristic " + std::to_string(chi) + ", expected 2");
  if (rep.structural_failure()) return rep;

  for (const auto& v : P.vertices())
    if (v.size() != 3) add(Issue::coxeter, "vertex of degree " + std::to_string(v.size()));
  for (int f = 0; f < F; ++f)
    if (P.face(f).size() < 5)
      add(Issue::coxeter, "face with " + std::to_string(P.face(f).size()) + " edges");
  for (int f = 0; f < F; ++f)
    for (int g = f + 1; g < F; ++g) {
      int shared = 0;
      for (int e : P.face(f))
        if (P.other_face(e, f) == g) ++shared;
      if (shared > 1) add(Issue::coxeter, "faces sharing more than one edge");
    }
  for (int a = 0; a < F; ++a)
    for (int b = a + 1; b < F; ++b) {
      if (!P.adjacent(a, b)) continue;
      for (int c = b + 1; c < F; ++c)
        if (P.adjacent(a, c) && P.adjacent(b, c) && !P.share_vertex(a, b, c))
          add(Issue::coxeter, "face loop of length 3");
    }
  for (int a = 0; a < F; ++a)
    for (int b = 0; b < F; ++b) {
      if (b == a || !P.adjacent(a, b)) continue;
      for (int c = a + 1; c < F; ++c) {
        if (c == b || !P.adjacent(b, c) || P.adjacent(a, c)) continue;
        for (int d = 0; d < F; ++d)
          if (d != a && d != b && d != c && P.adjacent(c, d) && P.adjacent(d, a) &&
              !P.adjacent(b, d))
            add(Issue::coxeter, "face loop of length 4");
      }
    }
  if (F < 12) add(Issue::coxeter, "fewer than 12 faces");
  return rep;
}

namespace {

// Faces given as vertex cycles; orientations are made consistent.
Polyhedron from_vertex_cycles(std::vector<std::vector<int>> cyc) {
  const int F = static_cast<int>(cyc.size());
  std::map<std::pair<int, int>, std::vector<int>> owners;
  for (int f = 0; f < F; ++f)
    for (size_t i = 0; i < cyc[f].size(); ++i) {
      int a = cyc[f][i], b = cyc[f][(i + 1) % cyc[f].size()];
      owners[{std::min(a, b), std::max(a, b)}].push_back(f);
    }
  std::vector<int> state(F, 0);
  state[0] = 1;
  std::vector<int> q{0};
  while (!q.empty()) {
    int f = q.back();
    q.pop_back();
    for (size_t i = 0; i < cyc[f].size(); ++i) {
      int a = cyc[f][i], b = cyc[f][(i + 1) % cyc[f].size()];
      for (int g : owners[{std::min(a, b), std::max(a, b)}]) {
        if (g == f || state[g]) continue;
        // g must run b -> a.
        auto& c = cyc[g];
        auto it = std::find(c.begin(), c.end(), a);
        size_t j = static_cast<size_t>(it - c.begin());
        if (c[(j + 1) % c.size()] == b) std::reverse(c.begin(), c.end());
        state[g] = 1;
        q.push_back(g);
      }
    }
  }
  std::map<std::pair<int, int>, int> eid;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::vector<int>> faces(F);
  for (int f = 0; f < F; ++f)
    for (size_t i = 0; i < cyc[f].size(); ++i) {
      int a = cyc[f][i], b = cyc[f][(i + 1) % cyc[f].size()];
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = eid.find(key);
      if (it == eid.end()) {
        it = eid.emplace(key, static_cast<int>(edges.size())).first;
        edges.push_back({f, -1});
      } else {
        edges[it->second][1] = f;
      }
      faces[f].push_back(it->second);
    }
  return Polyhedron(std::move(faces), std::move(edges));
}

}  // namespace

Polyhedron dodecahedron() {
  // Layers a, b, c, d of five vertices each; a and d are pentagons.
  auto A = [](int i) { return (i + 5) % 5; };
  auto B = [](int i) { return 5 + (i + 5) % 5; };
  auto C = [](int i) { return 10 + (i + 5) % 5; };
  auto D = [](int i) { return 15 + (i + 5) % 5; };
  std::vector<std::vector<int>> cyc;
  cyc.push_back({A(0), A(1), A(2), A(3), A(4)});
  for (int i = 0; i < 5; ++i) cyc.push_back({A(i), B(i), C(i), B(i + 1), A(i + 1)});
  for (int i = 0; i < 5; ++i) cyc.push_back({C(i), B(i + 1), C(i + 1), D(i + 1), D(i)});
  cyc.push_back({D(4), D(3), D(2), D(1), D(0)});
  return from_vertex_cycles(std::move(cyc));
}

Polyhedron cube() {
  return from_vertex_cycles({{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 5, 4},
                             {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}});
}

bool is_face_loop(const Polyhedron& P, const std::vector<int>& faces) {
  std::set<int> uniq(faces.begin(), faces.end());
  if (uniq.size() != faces.size()) fail(Status::invalid_input, "repeated face in loop");
  for (int f : faces)
    if (f < 0 || f >= P.num_faces()) fail(Status::invalid_input, "face id out of range");
  const int n = static_cast<int>(faces.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool consecutive = (j == i + 1) || (i == 0 && j == n - 1);
      if (P.adjacent(faces[i], faces[j]) != consecutive) return false;
    }
  if (n == 3 && P.share_vertex(faces[0], faces[1], faces[2])) return false;
  return true;
}

namespace {

bool connected_subset(const Polyhedron& P, const std::vector<int>& s) {
  std::set<int> in(s.begin(), s.end());
  std::set<int> seen{s[0]};
  std::vector<int> st{s[0]};
  while (!st.empty()) {
    int f = st.back();
    st.pop_back();
    for (size_t i = 0; i < P.face(f).size(); ++i) {
      int g = P.neighbor(f, static_cast<int>(i));
      if (in.count(g) && seen.insert(g).second) st.push_back(g);
    }
  }
  return seen.size() == in.size();
}

}  // namespace

int closed_edge_count(const Polyhedron& P, const std::vector<int>& faces) {
  std::set<int> es;
  for (int f : faces) es.insert(P.face(f).begin(), P.face(f).end());
  return static_cast<int>(es.size());
}

bool is_face_disk(const Polyhedron& P, const std::vector<int>& face_set) {
  if (face_set.empty()) return false;
  std::set<int> uniq(face_set.begin(), face_set.end());
  std::vector<int> s(uniq.begin(), uniq.end());
  for (int f : s)
    if (f < 0 || f >= P.num_faces()) fail(Status::invalid_input, "face id out of range");
  if (!connected_subset(P, s)) return false;
  std::set<int> vs;
  for (int f : s) vs.insert(P.face_vertices(f).begin(), P.face_vertices(f).end());
  int chi = static_cast<int>(vs.size()) - closed_edge_count(P, s) + static_cast<int>(s.size());
  return chi == 1;
}

FaceDisk make_face_disk(const Polyhedron& P, std::vector<int> face_set) {
  std::sort(face_set.begin(), face_set.end());
  face_set.erase(std::unique(face_set.begin(), face_set.end()), face_set.end());
  if (!is_face_disk(P, face_set)) fail(Status::invalid_input, "not a face disk");
  FaceDisk D;
  D.faces = face_set;
  std::vector<char> in(P.num_faces(), 0);
  for (int f : face_set) in[f] = 1;
  std::map<int, std::pair<int, int>> out;  // start vertex -> (edge, end vertex)
  for (int f : face_set) {
    int k = static_cast<int>(P.face(f).size());
    for (int i = 0; i < k; ++i) {
      int e = P.face(f)[i];
      if (in[P.other_face(e, f)]) continue;
      int a = P.corner_vertex(f, i - 1), b = P.corner_vertex(f, i);
      if (!out.emplace(a, std::make_pair(e, b)).second)
        fail(Status::invalid_input, "disk boundary is not a simple cycle");
    }
  }
  if (out.empty()) return D;
  int start = -1, best = P.num_edges();
  for (auto& [v, eb] : out)
    if (eb.first < best) best = eb.first, start = v;
  int v = start;
  do {
    auto [e, w] = out.at(v);
    D.boundary_edges.push_back(e);
    D.boundary_vertices.push_back(v);
    v = w;
  } while (v != start && D.boundary_edges.size() <= out.size());
  if (D.boundary_edges.size() != out.size())
    fail(Status::invalid_input, "disk boundary is not a simple cycle");
  for (int e : D.boundary_edges) {
    const auto& pr = P.edges()[e];
    int t = in[pr[0]] ? pr[1] : pr[0];
    if (D.transverse.empty() || D.transverse.back() != t) D.transverse.push_back(t);
  }
  while (D.transverse.size() > 1 && D.transverse.front() == D.transverse.back())
    D.transverse.pop_back();
  for (int bv : D.boundary_vertices) {
    int cnt = 0;
    for (int f : face_set)
      if (std::binary_search(P.face_vertices(f).begin(), P.face_vertices(f).end(), bv)) ++cnt;
    if (cnt == 1) ++D.degree_two_vertices;
  }
  return D;
}

bool satisfies_convexity(const Polyhedron& P, const FaceDisk& D) {
  if (static_cast<int>(D.faces.size()) >= P.num_faces())
    fail(Status::invalid_input, "disk covers the whole polyhedron");
  std::set<int> uniq(D.transverse.begin(), D.transverse.end());
  if (uniq.size() != D.transverse.size()) return false;
  return is_face_loop(P, D.transverse);
}

Polyhedron mirror(const Polyhedron& P) {
  auto faces = P.faces();
  for (auto& f : faces) std::reverse(f.begin(), f.end());
  return Polyhedron(std::move(faces), P.edges());
}

GlueResult glue(const Polyhedron& P1, int F1, const Polyhedron& P2, int F2, int s) {
  const auto& x = P1.face(F1);
  const auto& y = P2.face(F2);
  const int k = static_cast<int>(x.size());
  if (static_cast<int>(y.size()) != k) fail(Status::invalid_input, "glued faces differ in size");
  const int E1 = P1.num_edges(), E2 = P2.num_edges();
  const int N1 = P1.num_faces(), N2 = P2.num_faces();
  auto third = [](const Polyhedron& P, int f, int i) {
    int v = P.corner_vertex(f, i);
    const auto& c = P.face(f);
    int ki = static_cast<int>(c.size());
    for (int e : P.vertices()[v])
      if (e != c[mod(i, ki)] && e != c[mod(i + 1, ki)]) return e;
    fail(Status::invalid_input, "vertex without a third edge");
  };
  UnionFind ue(E1 + E2), uf(N1 + N2);
  std::vector<char> gone_e(E1 + E2, 0);
  for (int i = 0; i < k; ++i) {
    int a = mod(s - i, k);
    gone_e[x[i]] = 1;
    gone_e[E1 + y[a]] = 1;
    ue.unite(third(P1, F1, i), E1 + third(P2, F2, a - 1));
    uf.unite(P1.neighbor(F1, i), N1 + P2.neighbor(F2, a));
  }
  GlueResult r;
  r.face_map1.assign(N1, -1);
  r.face_map2.assign(N2, -1);
  std::map<int, int> fid;
  auto face_id = [&](int idx) {
    int rep = uf.find(idx);
    auto it = fid.find(rep);
    if (it == fid.end()) it = fid.emplace(rep, static_cast<int>(fid.size())).first;
    return it->second;
  };
  for (int f = 0; f < N1; ++f)
    if (f != F1) r.face_map1[f] = face_id(f);
  for (int f = 0; f < N2; ++f)
    if (f != F2) r.face_map2[f] = face_id(N1 + f);
  std::map<int, int> eid;
  auto edge_id = [&](int idx) {
    int rep = ue.find(idx);
    auto it = eid.find(rep);
    if (it == eid.end()) it = eid.emplace(rep, static_cast<int>(eid.size())).first;
    return it->second;
  };
  for (int e = 0; e < E1 + E2; ++e)
    if (!gone_e[e]) edge_id(e);

  std::vector<std::vector<int>> faces(fid.size());
  std::vector<char> done(fid.size(), 0);
  auto rotated_tail = [](const std::vector<int>& c, int pos) {
    std::vector<int> out;
    int m = static_cast<int>(c.size());
    for (int t = 1; t < m; ++t) out.push_back(c[(pos + t) % m]);
    return out;
  };
  for (int i = 0; i < k; ++i) {
    int a = mod(s - i, k);
    int g1 = P1.neighbor(F1, i), g2 = P2.neighbor(F2, a);
    int nf = r.face_map1[g1];
    done[nf] = 1;
    const auto& c1 = P1.face(g1);
    const auto& c2 = P2.face(g2);
    int p1 = static_cast<int>(std::find(c1.begin(), c1.end(), x[i]) - c1.begin());
    int p2 = static_cast<int>(std::find(c2.begin(), c2.end(), y[a]) - c2.begin());
    std::vector<int> cyc;
    for (int e : rotated_tail(c1, p1)) cyc.push_back(edge_id(e));
    for (int e : rotated_tail(c2, p2)) cyc.push_back(edge_id(E1 + e));
    std::vector<int> clean;
    for (int e : cyc)
      if (clean.empty() || clean.back() != e) clean.push_back(e);
    while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
    faces[nf] = clean;
  }
  for (int f = 0; f < N1; ++f) {
    if (f == F1 || done[r.face_map1[f]]) continue;
    for (int e : P1.face(f)) faces[r.face_map1[f]].push_back(edge_id(e));
  }
  for (int f = 0; f < N2; ++f) {
    if (f == F2 || done[r.face_map2[f]]) continue;
    for (int e : P2.face(f)) faces[r.face_map2[f]].push_back(edge_id(E1 + e));
  }
  std::vector<std::array<int, 2>> edges(eid.size(), {-1, -1});
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (int e : faces[f]) (edges[e][0] < 0 ? edges[e][0] : edges[e][1]) = f;
  r.poly = Polyhedron(std::move(faces), std::move(edges));
  return r;
}

GlueResult double_across(const Polyhedron& P, int F) {
  int k = static_cast<int>(P.face(F).size());
  return glue(P, F, mirror(P), F, k - 1);
}

CanonicalForm canonical_form(const Polyhedron& P) {
  CanonicalForm best;
  bool have = false;
  const int F = P.num_faces(), E = P.num_edges();
  for (int dir = 0; dir < 2; ++dir) {
    Polyhedron Q = dir == 0 ? P : mirror(P);
    for (int f0 = 0; f0 < F; ++f0)
      for (int i0 = 0; i0 < static_cast<int>(Q.face(f0).size()); ++i0) {
        std::vector<int> fl(F, -1), el(E, -1), st(F, 0);
        std::vector<int> order{f0};
        fl[f0] = 0;
        st[f0] = i0;
        int ne = 0;
        CanonicalForm code;
        for (size_t h = 0; h < order.size(); ++h) {
          int f = order[h];
          const auto& c = Q.face(f);
          int k = static_cast<int>(c.size());
          std::vector<int> row;
          for (int t = 0; t < k; ++t) {
            int e = c[(st[f] + t) % k];
            if (el[e] < 0) el[e] = ne++;
            row.push_back(el[e]);
          }
          for (int t = 0; t < k; ++t) {
            int e = c[(st[f] + t) % k];
            int g = Q.other_face(e, f);
            if (fl[g] >= 0) continue;
            fl[g] = static_cast<int>(order.size());
            const auto& cg = Q.face(g);
            st[g] = static_cast<int>(std::find(cg.begin(), cg.end(), e) - cg.begin());
            order.push_back(g);
          }
          code.push_back(std::move(row));
          if (have && code > best) break;
        }
        if (!have || code < best) {
          best = std::move(code);
          have = true;
        }
      }
  }
  return best;
}

namespace {

constexpr int kMaxEnumFaces = 24;
using Bits = std::bitset<512>;

struct SubsetTables {
  int F = 0;
  std::vector<Bits> fe, fv;
  std::vector<std::uint32_t> nbr;
  std::vector<std::uint32_t> vfaces;
};

SubsetTables tables(const Polyhedron& P) {
  if (P.num_faces() > kMaxEnumFaces) fail(Status::resource, "too many faces for exhaustive enumeration");
  if (P.num_edges() > 512 || P.num_vertices() > 512) fail(Status::resource, "complex too large");
  SubsetTables t;
  t.F = P.num_faces();
  t.fe.resize(t.F);
  t.fv.resize(t.F);
  t.nbr.assign(t.F, 0);
  t.vfaces.assign(P.num_vertices(), 0);
  for (int f = 0; f < t.F; ++f) {
    for (int e : P.face(f)) t.fe[f].set(e);
    for (int v : P.face_vertices(f)) {
      t.fv[f].set(v);
      t.vfaces[v] |= 1u << f;
    }
    for (int g = 0; g < t.F; ++g)
      if (P.adjacent(f, g)) t.nbr[f] |= 1u << g;
  }
  return t;
}

bool mask_connected(const SubsetTables& t, std::uint32_t m) {
  std::uint32_t seen = m & (~m + 1), frontier = seen;
  while (frontier) {
    std::uint32_t nxt = 0;
    for (std::uint32_t b = frontier; b; b &= b - 1) nxt |= t.nbr[__builtin_ctz(b)];
    nxt &= m & ~seen;
    seen |= nxt;
    frontier = nxt;
  }
  return seen == m;
}

struct SubsetStats {
  int max_edges = 0;
  std::uint64_t subsets = 0, disks = 0, small = 0;
  int min_small = -1;
};

template <class Fn>
SubsetStats scan_subsets(const SubsetTables& t, int workers, Fn visit) {
  const std::uint64_t total = 1ull << t.F;
  workers = std::max(1, std::min(workers, 64));
  std::vector<SubsetStats> part(workers);
  auto run = [&](int w) {
    SubsetStats& s = part[w];
    for (std::uint64_t m = 1 + w; m < total; m += workers) {
      ++s.subsets;
      auto mask = static_cast<std::uint32_t>(m);
      if (!mask_connected(t, mask)) continue;
      Bits E, V;
      for (std::uint32_t b = mask; b; b &= b - 1) {
        int f = __builtin_ctz(b);
        E |= t.fe[f];
        V |= t.fv[f];
      }
      int ne = static_cast<int>(E.count());
      int chi = static_cast<int>(V.count()) - ne + __builtin_popcount(mask);
      if (chi != 1) continue;
      ++s.disks;
      visit(s, mask, ne, V);
    }
  };
  std::vector<std::thread> th;
  for (int w = 1; w < workers; ++w) th.emplace_back(run, w);
  run(0);
  for (auto& x : th) x.join();
  SubsetStats out;
  out.subsets = 1;  // the empty set
  for (auto& s : part) {
    out.max_edges = std::max(out.max_edges, s.max_edges);
    out.subsets += s.subsets;
    out.disks += s.disks;
    out.small += s.small;
    if (s.min_small >= 0 && (out.min_small < 0 || s.min_small < out.min_small))
      out.min_small = s.min_small;
  }
  return out;
}

}  // namespace

int c_of_P(const Polyhedron& P, int workers) {
  auto t = tables(P);
  auto st = scan_subsets(t, workers, [](SubsetStats& s, std::uint32_t, int ne, const Bits&) {
    s.max_edges = std::max(s.max_edges, ne);
  });
  return st.max_edges;
}

DegreeLemmaReport degree_lemma_report(const Polyhedron& P, int workers) {
  auto t = tables(P);
  const int V = P.num_vertices();
  auto st = scan_subsets(t, workers, [&](SubsetStats& s, std::uint32_t mask, int, const Bits& vs) {
    if (static_cast<int>(__builtin_popcount(mask)) == t.F) return;
    int v2 = 0;
    for (int v = 0; v < V; ++v)
      if (vs.test(v) && __builtin_popcount(t.vfaces[v] & mask) == 1) ++v2;
    if (v2 > 4) return;
    ++s.small;
    int nf = __builtin_popcount(mask);
    if (s.min_small < 0 || nf < s.min_small) s.min_small = nf;
  });
  DegreeLemmaReport r;
  r.subsets = st.subsets;
  r.disks = st.disks;
  r.small_boundary = st.small;
  r.min_faces_small = st.min_small;
  r.holds = st.min_small < 0 || 2 * st.min_small > P.num_faces();
  return r;
}

bool check_degree_lemma(const Polyhedron& P, int workers) {
  return degree_lemma_report(P, workers).holds;
}

namespace {

// Positions of T's cycle whose neighbour lies in the disk, as (start, length).
std::pair<int, int> disk_run(const Polyhedron& P, const FaceDisk& D, int T) {
  const auto& c = P.face(T);
  int k = static_cast<int>(c.size());
  std::vector<char> hit(k, 0);
  int cnt = 0;
  for (int i = 0; i < k; ++i)
    if (std::binary_search(D.faces.begin(), D.faces.end(), P.neighbor(T, i))) hit[i] = 1, ++cnt;
  if (cnt == 0 || cnt == k) return {-1, cnt};
  int start = -1;
  for (int i = 0; i < k; ++i)
    if (hit[i] && !hit[mod(i - 1, k)]) {
      if (start >= 0) return {-1, cnt};  // not contiguous
      start = i;
    }
  return {start, cnt};
}

}  // namespace

int matching_shift(const Polyhedron& P1, const FaceDisk& D1, int T1,
                   const Polyhedron& P2, const FaceDisk& D2, int T2) {
  int k = static_cast<int>(P1.face(T1).size());
  if (static_cast<int>(P2.face(T2).size()) != k) return -1;
  auto [p, L1] = disk_run(P1, D1, T1);
  auto [q, L2] = disk_run(P2, D2, T2);
  if (p < 0 || q < 0 || L1 != L2) return -1;
  return mod(p + q + L1 - 1, k);
}

AmalgamResult amalgamate_disks(const Polyhedron& P1, const FaceDisk& D1,
                               const Polyhedron& P2, const FaceDisk& D2,
                               const DiskMatching& m) {
  auto has = [](const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  if (!has(D1.transverse, m.T1) || !has(D2.transverse, m.T2))
    fail(Status::invalid_input, "matched face is not transverse to its disk");
  int k = static_cast<int>(P1.face(m.T1).size());
  if (static_cast<int>(P2.face(m.T2).size()) != k)
    fail(Status::invalid_input, "incompatible matching: edge counts differ");
  auto [p, L1] = disk_run(P1, D1, m.T1);
  auto [q, L2] = disk_run(P2, D2, m.T2);
  if (p < 0 || q < 0 || L1 != L2)
    fail(Status::invalid_input, "incompatible matching: boundary runs differ");
  for (int t = 0; t < L1; ++t) {
    int img = mod(m.shift - (p + t), k);
    if (mod(img - q, k) >= L2) fail(Status::invalid_input, "incompatible matching: runs misaligned");
  }
  AmalgamResult r;
  r.glued = glue(P1, m.T1, P2, m.T2, m.shift);
  std::vector<int> faces;
  for (int f : D1.faces) faces.push_back(r.glued.face_map1[f]);
  for (int f : D2.faces) faces.push_back(r.glued.face_map2[f]);
  r.disk = make_face_disk(r.glued.poly, faces);
  return r;
}

std::string to_json(const Polyhedron& P) {
  nlohmann::json j;
  j["faces"] = P.faces();
  nlohmann::json e = nlohmann::json::array();
  for (auto& pr : P.edges()) e.push_back({pr[0], pr[1]});
  j["edges"] = e;
  return j.dump();
}

Polyhedron polyhedron_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& ex) {
    fail(Status::malformed, std::string("polyhedron json: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("faces") || !j.contains("edges"))
    fail(Status::malformed, "polyhedron json needs faces and edges");
  std::vector<std::vector<int>> faces;
  std::vector<std::array<int, 2>> edges;
  try {
    faces = j["faces"].get<std::vector<std::vector<int>>>();
    for (auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) fail(Status::malformed, "edge entry must have two faces");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  } catch (const nlohmann::json::exception& ex) {
    fail(Status::malformed, std::string("polyhedron json: ") + ex.what());
  }
  return Polyhedron(std::move(faces), std::move(edges));
}

Polyhedron load_polyhedron(const std::string& name) {
  if (name == "dodecahedron") return dodecahedron();
  if (name == "cube") return cube();
  if (name == "dodecahedron-double") return double_across(dodecahedron(), 0).poly;
  std::ifstream in(name);
  if (!in) fail(Status::io, "cannot read " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return polyhedron_from_json(ss.str());
}

}  // namespace sc
