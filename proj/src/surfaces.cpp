#include "surfcensus/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "surfcensus/error.hpp"

namespace sc {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

using CellKey = std::pair<Word, int>;

// A 2-cell is shared by the chambers w and w*f.
CellKey cell_key(const CoxeterGroup& G, const Word& w, int f) {
  Word a = G.normal_form(w);
  Word b = G.multiply(a, Word{f});
  return {shortlex_less(b, a) ? b : a, f};
}

Word conjugate(const CoxeterGroup& G, const Word& m, const Word& x) {
  return G.multiply(G.multiply(m, x), G.inverse(m));
}

bool has_partner(const CellSide& s) { return s.kind == SideKind::internal || s.kind == SideKind::glued; }

// Side of the cell meeting side s at host vertex v.
int other_side(const Polyhedron& P, int face, int s, int v) {
  const int k = static_cast<int>(P.face(face).size());
  if (P.corner_vertex(face, s) == v) return mod(s + 1, k);
  if (P.corner_vertex(face, mod(s - 1, k)) == v) return mod(s - 1, k);
  fail(Status::invariant_violation, "side does not meet the vertex");
}

int far_vertex(const Polyhedron& P, int face, int s, int v) {
  const int k = static_cast<int>(P.face(face).size());
  int a = P.corner_vertex(face, mod(s - 1, k)), b = P.corner_vertex(face, s);
  return a == v ? b : a;
}

// Internal sides from the tessellation: across the edge f|g of (w,f) lie
// (w g, f), (w, g) and (w f, g). Unmatched sides become reflectors.
void link_cells(const CoxeterGroup& G, const Polyhedron& P, std::vector<Cell>& cells, int first, int count) {
  std::map<CellKey, int> index;
  for (int x = first; x < first + count; ++x) {
    auto key = cell_key(G, cells[x].chamber, cells[x].face);
    if (!index.emplace(key, x).second) fail(Status::invariant_violation, "two cells coincide");
  }
  for (int x = first; x < first + count; ++x) {
    Cell& c = cells[x];
    const int f = c.face, k = static_cast<int>(P.face(f).size());
    c.sides.assign(k, CellSide{});
    for (int i = 0; i < k; ++i) {
      int g = P.neighbor(f, i);
      int back = P.shared_position(g, f);
      std::pair<CellKey, int> cand[3] = {
          {cell_key(G, G.multiply(c.chamber, Word{g}), f), i},
          {cell_key(G, c.chamber, g), back},
          {cell_key(G, G.multiply(c.chamber, Word{f}), g), back},
      };
      int found = 0;
      for (auto& [key, side] : cand) {
        auto it = index.find(key);
        if (it == index.end()) continue;
        ++found;
        c.sides[i].kind = SideKind::internal;
        c.sides[i].cell = it->second;
        c.sides[i].side = side;
      }
      if (found > 1) fail(Status::invariant_violation, "edge carries more than two cells");
      if (found == 0) c.sides[i].kind = SideKind::reflector;
    }
  }
}

Wall side_wall(const CoxeterGroup& G, const Polyhedron& P, const Cell& c, int s) {
  return make_wall(G, c.chamber, P.neighbor(c.face, s));
}

// Unpaired sides in boundary order; throws unless they form a single cycle.
std::vector<std::pair<int, int>> boundary_cycle(const Polyhedron& P, const std::vector<Cell>& cells, int first,
                                                int count) {
  std::vector<std::pair<int, int>> open;
  for (int x = first; x < first + count; ++x)
    for (int s = 0; s < static_cast<int>(cells[x].sides.size()); ++s)
      if (!has_partner(cells[x].sides[s])) open.push_back({x, s});
  if (open.empty()) return {};
  std::vector<std::pair<int, int>> out{open[0]};
  int c = open[0].first, s = open[0].second;
  int v = P.corner_vertex(cells[c].face, s);
  const std::size_t guard = 4 * cells.size() * 8 + 16;
  for (std::size_t step = 0;; ++step) {
    if (step > guard) fail(Status::invariant_violation, "boundary walk does not close");
    int t = other_side(P, cells[c].face, s, v);
    std::size_t spin = 0;
    while (has_partner(cells[c].sides[t])) {
      if (++spin > guard) fail(Status::invariant_violation, "vertex walk does not close");
      const CellSide& sd = cells[c].sides[t];
      c = sd.cell;
      s = sd.side;
      t = other_side(P, cells[c].face, s, v);
    }
    if (std::make_pair(c, t) == open[0]) break;
    out.push_back({c, t});
    v = far_vertex(P, cells[c].face, t, v);
    s = t;
  }
  if (out.size() != open.size()) fail(Status::invariant_violation, "boundary is not a single cycle");
  return out;
}

std::vector<Run> make_runs(const CoxeterGroup& G, const Polyhedron& P, const std::vector<Cell>& cells,
                           const std::vector<std::pair<int, int>>& cyc) {
  std::vector<Run> runs;
  if (cyc.empty()) return runs;
  const std::size_t L = cyc.size();
  std::vector<Wall> walls;
  for (auto& [x, s] : cyc) walls.push_back(side_wall(G, P, cells[x], s));
  std::size_t start = 0;
  for (std::size_t i = 0; i < L; ++i)
    if (!(walls[i] == walls[(i + L - 1) % L])) {
      start = i;
      break;
    }
  for (std::size_t t = 0; t < L; ++t) {
    std::size_t i = (start + t) % L;
    if (runs.empty() || !(runs.back().wall == walls[i])) {
      Run r;
      r.wall = walls[i];
      r.face = P.neighbor(cells[cyc[i].first].face, cyc[i].second);
      runs.push_back(r);
    }
    runs.back().sides.push_back(cyc[i]);
  }
  return runs;
}

bool wall_loop(const CoxeterGroup& G, const std::vector<Wall>& walls) {
  const std::size_t k = walls.size();
  if (k < 3) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
      if (walls[i] == walls[j]) return false;
      if (walls_intersect(G, walls[i], walls[j]) != consecutive) return false;
    }
  return true;
}

// D with sigma = identity: cells 0..n-1 are the F1 copies, cell n is F2.
OrbifoldComplex base_complex(const DiskSpec& spec) {
  ChainFaces cf = chain_faces(spec);
  OrbifoldComplex c;
  auto G = std::make_shared<const CoxeterGroup>(spec.host);
  c.group = G;
  c.host = spec.host;
  c.n = spec.n;
  c.F1 = spec.F1;
  c.F2 = spec.F2;
  for (int k = 0; k < spec.n; ++k) c.cells.push_back({G->normal_form(chain_chamber(cf, k)), spec.F1, 0, {}});
  c.cells.push_back({Word{}, spec.F2, 0, {}});
  const int N = static_cast<int>(c.cells.size());
  link_cells(*G, c.host, c.cells, 0, N);
  c.runs = make_runs(*G, c.host, c.cells, boundary_cycle(c.host, c.cells, 0, N));

  // Run 0 carries the T side of the first copy.
  const int posT = c.host.shared_position(spec.F1, cf.T);
  auto first = std::find_if(c.runs.begin(), c.runs.end(), [&](const Run& r) {
    return std::find(r.sides.begin(), r.sides.end(), std::make_pair(0, posT)) != r.sides.end();
  });
  std::rotate(c.runs.begin(), first, c.runs.end());

  int cuts = 0;
  for (std::size_t r = 0; r < c.runs.size(); ++r) {
    Run& run = c.runs[r];
    for (auto& [x, s] : run.sides) c.cells[x].sides[s].run = static_cast<int>(r);
    if (run.face != cf.L || run.sides.size() != 2) continue;
    int a = std::min(run.sides[0].first, run.sides[1].first);
    int b = std::max(run.sides[0].first, run.sides[1].first);
    if (a % 2 == 0 && b == a + 1 && b < spec.n) {
      run.cut = a / 2;
      ++cuts;
    }
  }
  if (cuts != cut_edge_count(spec.n)) fail(Status::construction, "cut runs do not follow the alternating rule");
  c.sigma = identity_involution(cuts);
  return c;
}

int cut_run(const OrbifoldComplex& c, int i) {
  for (std::size_t r = 0; r < c.runs.size(); ++r)
    if (c.runs[r].cut == i) return static_cast<int>(r);
  fail(Status::invalid_input, "no cut run " + std::to_string(i));
}

// Glue cut i of copy gi to cut j of copy gj. The element carries the first
// cell next to its partner.
void pair_cuts(OrbifoldComplex& c, const ChainFaces& cf, int i, int gi, int j, int gj) {
  const CoxeterGroup& G = *c.group;
  const int per_copy = c.n + 1;
  const int posL = c.host.shared_position(c.F1, cf.L);
  Word h0;
  for (int t = 0; t < 2; ++t) {
    int x = gi * per_copy + 2 * i + t, y = gj * per_copy + 2 * j + t;
    const Word& a = c.cells[x].chamber;
    const Word& b = c.cells[y].chamber;
    if (G.word_length(G.multiply(b, G.inverse(a))) % 2 != 0)
      fail(Status::construction, "no orientation-preserving element for the pairing");
    Word h = G.multiply(G.multiply(b, Word{cf.L}), G.inverse(a));
    if (t == 0) h0 = h;
    else if (h != h0) fail(Status::construction, "cut runs are not carried by one element");
    auto& sx = c.cells[x].sides[posL];
    auto& sy = c.cells[y].sides[posL];
    sx.kind = sy.kind = SideKind::glued;
    sx.cell = y;
    sx.side = posL;
    sy.cell = x;
    sy.side = posL;
    sx.element = h;
    sy.element = G.inverse(h);
  }
}

std::vector<CellKey> placed_keys(const OrbifoldComplex& c, const Word& M) {
  const CoxeterGroup& G = *c.group;
  std::vector<CellKey> keys;
  for (int x = 0; x <= c.n; ++x) keys.push_back(cell_key(G, G.multiply(M, c.cells[x].chamber), c.cells[x].face));
  return keys;
}

std::vector<Word> placed_chambers(const OrbifoldComplex& c, const Word& M) {
  std::vector<Word> out;
  for (int x = 0; x <= c.n; ++x) out.push_back(c.group->multiply(M, c.cells[x].chamber));
  return out;
}

double factorial(int k) {
  double r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string word_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + std::to_string(w[i]);
  return s;
}

}  // namespace

DiskSpec default_disk_spec(const Polyhedron& P, int n) {
  DiskSpec s;
  s.host = P;
  s.n = n;
  for (int f = 0; f < P.num_faces(); ++f)
    if (P.face(f).size() == 5) {
      s.F1 = f;
      s.F2 = P.neighbor(f, 0);
      return s;
    }
  fail(Status::invalid_input, "host has no pentagonal face");
}

ChainFaces chain_faces(const DiskSpec& spec) {
  const Polyhedron& P = spec.host;
  if (spec.n < 1) fail(Status::invalid_input, "n must be at least 1");
  if (spec.F1 < 0 || spec.F1 >= P.num_faces() || spec.F2 < 0 || spec.F2 >= P.num_faces())
    fail(Status::invalid_input, "face id out of range");
  if (P.face(spec.F1).size() != 5) fail(Status::invalid_input, "F1 is not pentagonal");
  int p = P.shared_position(spec.F1, spec.F2);
  if (p < 0) fail(Status::invalid_input, "F2 is not adjacent to F1");
  ChainFaces cf;
  cf.A = P.neighbor(spec.F1, mod(p - 2, 5));
  cf.T = P.neighbor(spec.F1, mod(p - 1, 5));
  cf.B = spec.F2;
  cf.N3 = P.neighbor(spec.F1, mod(p + 1, 5));
  cf.L = P.neighbor(spec.F1, mod(p + 2, 5));
  return cf;
}

Word chain_chamber(const ChainFaces& cf, int k) {
  Word w;
  for (int t = 0; t < k; ++t) w.push_back(t % 2 == 0 ? cf.A : cf.B);
  return w;
}

int cut_edge_count(int n) { return n / 2; }

BuiltDisk build_disk(const DiskSpec& spec) {
  ChainFaces cf = chain_faces(spec);
  const Polyhedron& P = spec.host;
  const Polyhedron Pm = mirror(P);
  BuiltDisk out;
  out.hat = P;
  std::vector<std::vector<int>> copy_map(1);
  for (int f = 0; f < P.num_faces(); ++f) copy_map[0].push_back(f);
  for (int k = 0; k + 1 < spec.n; ++k) {
    int X = k % 2 == 0 ? cf.A : cf.B;
    const Polyhedron& next = (k + 1) % 2 ? Pm : P;
    int Xhat = copy_map[k][X];
    bool done = false;
    for (int s = 0; s < 5 && !done; ++s) {
      GlueResult r = glue(out.hat, Xhat, next, X, s);
      if (r.face_map2[spec.F1] != r.face_map1[copy_map[k][spec.F1]]) continue;
      if (r.face_map2[cf.T] != r.face_map1[copy_map[k][cf.T]]) continue;
      for (auto& m : copy_map)
        for (int& f : m) f = f < 0 ? -1 : r.face_map1[f];
      copy_map.push_back(r.face_map2);
      out.hat = std::move(r.poly);
      done = true;
    }
    if (!done) fail(Status::construction, "no gluing shift fuses the F1 copies");
  }
  auto report = validate_right_angled(out.hat);
  if (!report.ok()) fail(Status::construction, "doubled polyhedron invalid: " + report.issues[0].message);
  out.f1_face = copy_map[0][spec.F1];
  out.f2_face = copy_map[0][spec.F2];
  out.disk = make_face_disk(out.hat, {out.f1_face, out.f2_face});
  if (!satisfies_convexity(out.hat, out.disk)) fail(Status::construction, "disk fails convexity");
  for (int i = 0; i < cut_edge_count(spec.n); ++i) {
    int Lhat = copy_map[2 * i][cf.L];
    if (Lhat != copy_map[2 * i + 1][cf.L]) fail(Status::construction, "cut sides did not fuse");
    out.cut_edges.push_back(out.hat.face(out.f1_face)[out.hat.shared_position(out.f1_face, Lhat)]);
  }
  return out;
}

OrbifoldComplex glue_sigma(const DiskSpec& spec, const Involution& sigma) {
  OrbifoldComplex c = base_complex(spec);
  const int m = cut_edge_count(spec.n);
  if (static_cast<int>(sigma.size()) != m || !is_involution(sigma))
    fail(Status::invalid_input, "sigma must be an involution on " + std::to_string(m) + " cut edges");
  ChainFaces cf = chain_faces(spec);
  for (int i = 0; i < m; ++i)
    if (sigma[i] > i) pair_cuts(c, cf, i, 0, sigma[i], 0);
  c.sigma = sigma;
  return c;
}

OrbifoldComplex complex_from_cells(const Polyhedron& host, const std::vector<std::pair<Word, int>>& cells) {
  OrbifoldComplex c;
  auto G = std::make_shared<const CoxeterGroup>(host);
  c.group = G;
  c.host = host;
  for (auto& [w, f] : cells) {
    if (f < 0 || f >= host.num_faces()) fail(Status::invalid_input, "face id out of range");
    c.cells.push_back({G->normal_form(w), f, 0, {}});
  }
  link_cells(*G, host, c.cells, 0, static_cast<int>(c.cells.size()));
  return c;
}

std::vector<std::string> consistency_issues(const OrbifoldComplex& c) {
  const CoxeterGroup& G = *c.group;
  std::vector<std::string> out;
  const int N = static_cast<int>(c.cells.size());
  for (int x = 0; x < N; ++x) {
    const Cell& cell = c.cells[x];
    for (int s = 0; s < static_cast<int>(cell.sides.size()); ++s) {
      const CellSide& sd = cell.sides[s];
      std::string at = "cell " + std::to_string(x) + " side " + std::to_string(s);
      if (!has_partner(sd)) {
        if (sd.cell >= 0) out.push_back(at + ": reflector side has a partner");
        continue;
      }
      if (sd.cell < 0 || sd.cell >= N) {
        out.push_back(at + ": partner out of range");
        continue;
      }
      const CellSide& back = c.cells[sd.cell].sides.at(sd.side);
      if (back.cell != x || back.side != s || back.kind != sd.kind) {
        out.push_back(at + ": pairing is not symmetric");
        continue;
      }
      int g = c.host.neighbor(cell.face, s);
      const Cell& other = c.cells[sd.cell];
      if (sd.kind == SideKind::internal) {
        auto keys = {cell_key(G, G.multiply(cell.chamber, Word{g}), cell.face), cell_key(G, cell.chamber, g),
                     cell_key(G, G.multiply(cell.chamber, Word{cell.face}), g)};
        auto mine = cell_key(G, other.chamber, other.face);
        if (std::find(keys.begin(), keys.end(), mine) == keys.end())
          out.push_back(at + ": neighbour is not one generator away");
      } else {
        if (G.multiply(sd.element, back.element) != Word{}) out.push_back(at + ": gluing elements not inverse");
        int g2 = c.host.neighbor(other.face, sd.side);
        auto moved = cell_key(G, G.multiply(sd.element, cell.chamber), cell.face);
        auto target = cell_key(G, G.multiply(other.chamber, Word{g2}), other.face);
        if (moved != target) out.push_back(at + ": gluing element does not realize the pairing");
      }
    }
  }
  return out;
}

std::vector<VertexStar> vertex_stars(const OrbifoldComplex& c) {
  const CoxeterGroup& G = *c.group;
  const Polyhedron& P = c.host;
  const int N = static_cast<int>(c.cells.size());
  std::set<std::pair<int, int>> seen;
  std::vector<VertexStar> out;
  const int guard = 8 * N + 8;

  // Walks from x0 leaving through side exit; false when it stops at a mirror.
  auto walk = [&](int x0, int exit, int v, std::vector<int>& seq, Word& frame, std::pair<int, int>& end) {
    int cur = x0, ex = exit;
    frame.clear();
    for (int step = 0; step < guard; ++step) {
      const CellSide& sd = c.cells[cur].sides[ex];
      if (!has_partner(sd)) {
        end = {cur, ex};
        return false;
      }
      if (sd.kind == SideKind::glued) frame = G.multiply(frame, G.inverse(sd.element));
      if (sd.cell == x0) return true;
      cur = sd.cell;
      seq.push_back(cur);
      seen.insert({cur, v});
      ex = other_side(P, c.cells[cur].face, sd.side, v);
    }
    fail(Status::invariant_violation, "vertex star does not close");
  };

  for (int x = 0; x < N; ++x) {
    const int f = c.cells[x].face, k = static_cast<int>(P.face(f).size());
    for (int i = 0; i < k; ++i) {
      int v = P.corner_vertex(f, i);
      if (!seen.insert({x, v}).second) continue;
      VertexStar st;
      st.host_vertex = v;
      std::vector<int> fwd;
      Word frame1;
      std::pair<int, int> end1;
      if (walk(x, mod(i + 1, k), v, fwd, frame1, end1)) {
        st.cells.push_back(x);
        st.cells.insert(st.cells.end(), fwd.begin(), fwd.end());
        st.degree = static_cast<int>(st.cells.size());
        out.push_back(st);
        continue;
      }
      std::vector<int> back;
      Word frame2;
      std::pair<int, int> end2;
      walk(x, i, v, back, frame2, end2);
      st.interior = false;
      st.cells.assign(back.rbegin(), back.rend());
      st.cells.push_back(x);
      st.cells.insert(st.cells.end(), fwd.begin(), fwd.end());
      Word r1 = conjugate(G, frame1, side_wall(G, P, c.cells[end1.first], end1.second).reflection);
      Word r2 = conjugate(G, frame2, side_wall(G, P, c.cells[end2.first], end2.second).reflection);
      int order = 0;
      if (r1 == r2) order = 2;
      else if (G.multiply(r1, r2) == G.multiply(r2, r1)) order = 4;
      st.degree = order ? static_cast<int>(st.cells.size()) * order : -1;
      out.push_back(st);
    }
  }
  return out;
}

std::vector<int> orbifold_vertex_degrees(const OrbifoldComplex& c) {
  std::vector<int> d;
  for (auto& s : vertex_stars(c)) d.push_back(s.degree);
  return d;
}

bool check_injectivity_hypotheses(const Polyhedron& hat, const FaceDisk& D, const OrbifoldComplex& c) {
  if (!satisfies_convexity(hat, D)) return false;
  auto d = orbifold_vertex_degrees(c);
  return std::all_of(d.begin(), d.end(), [](int x) { return x == 4; });
}

Word run_generator(const OrbifoldComplex& c, int j) {
  const Run& run = c.runs.at(j);
  auto [x, s] = run.sides[0];
  const CellSide& sd = c.cells[x].sides[s];
  if (sd.kind == SideKind::glued) return c.cells[sd.cell].sides[sd.side].element;
  return run.wall.reflection;
}

Development develop(const OrbifoldComplex& c, int depth) {
  if (depth < 0) fail(Status::invalid_input, "negative depth");
  if (depth > kMaxDevelopDepth) fail(Status::resource, "develop depth above " + std::to_string(kMaxDevelopDepth));
  if (c.copies != 1) fail(Status::invalid_input, "develop needs the orbifold complex");
  const CoxeterGroup& G = *c.group;
  const int per = c.n + 1;
  Development dev;
  dev.depth = depth;
  std::vector<Word> placements{Word{}};
  Wall previous;
  bool have_previous = false;
  for (int stage = 0;; ++stage) {
    std::vector<Cell> cells;
    for (auto& M : placements)
      for (int x = 0; x < per; ++x) cells.push_back({G.multiply(M, c.cells[x].chamber), c.cells[x].face, 0, {}});
    const int N = static_cast<int>(cells.size());
    try {
      link_cells(G, c.host, cells, 0, N);
    } catch (const Error& e) {
      dev.embedded = false;
      fail(Status::invariant_violation, std::string("translates overlap: ") + e.what());
    }
    auto runs = make_runs(G, c.host, cells, boundary_cycle(c.host, cells, 0, N));
    std::vector<Wall> walls;
    for (auto& r : runs) walls.push_back(r.wall);
    if (!wall_loop(G, walls)) {
      dev.convex = false;
      fail(Status::invariant_violation, "developed disk fails convexity at stage " + std::to_string(stage));
    }
    if (stage == depth) {
      dev.translates = placements;
      for (auto& cell : cells) dev.cells.push_back(cell_key(G, cell.chamber, cell.face));
      dev.transverse = walls;
      return dev;
    }
    // Double across a run meeting the previous doubling wall, else the first run.
    std::size_t pick = 0;
    if (have_previous)
      for (std::size_t r = 0; r < runs.size(); ++r)
        if (walls_intersect(G, runs[r].wall, previous)) {
          pick = r;
          break;
        }
    auto [x, s] = runs[pick].sides[0];
    const Word& M = placements[x / per];
    int j = c.cells[x % per].sides[s].run;
    Word gamma = conjugate(G, M, run_generator(c, j));
    previous = runs[pick].wall;
    have_previous = true;
    std::vector<Word> next = placements;
    for (auto& P : placements) next.push_back(G.multiply(gamma, P));
    placements = std::move(next);
  }
}

std::string HalfSpaceInvariant::canonical() const {
  std::string s;
  for (std::size_t i = 0; i < walls.size(); ++i)
    s += word_string(walls[i].reflection) + ":" + std::to_string(partner[i]) + ";";
  return s;
}

HalfSpaceInvariant halfspace_invariant(const OrbifoldComplex& c) {
  HalfSpaceInvariant h;
  for (auto& run : c.runs) {
    h.walls.push_back(run.wall);
    auto [x, s] = run.sides[0];
    const CellSide& sd = c.cells[x].sides[s];
    h.partner.push_back(sd.kind == SideKind::glued ? c.cells[sd.cell].sides[sd.side].run : -1);
  }
  h.adjacency_ok = wall_loop(*c.group, h.walls);
  return h;
}

bool inequivalent(const OrbifoldComplex& c1, const OrbifoldComplex& c2, const Word& offset) {
  if (c1.copies != 1 || c2.copies != 1) fail(Status::invalid_input, "inequivalent compares orbifold complexes");
  if (c1.n != c2.n || c1.F1 != c2.F1 || c1.F2 != c2.F2 || c1.group->commutation() != c2.group->commutation())
    fail(Status::invalid_input, "complexes built over different disks");
  const CoxeterGroup& G = *c1.group;
  Word M1, M2 = G.normal_form(offset);
  auto B = placed_chambers(c2, M2);
  int d = d_P(G, placed_chambers(c1, M1), B);
  const int limit = d;
  for (int step = 0; d > 0; ++step) {
    if (step >= limit) fail(Status::invariant_violation, "normalization did not terminate");
    auto A = placed_chambers(c1, M1);
    bool moved = false;
    for (std::size_t j = 0; j < c1.runs.size() && !moved; ++j) {
      const Run& run = c1.runs[j];
      const Cell& cell = c1.cells[run.sides[0].first];
      Wall W = make_wall(G, G.multiply(M1, cell.chamber), run.face);
      int mine = wall_side(G, W, A[0]);
      bool beyond = std::all_of(B.begin(), B.end(), [&](const Word& w) { return wall_side(G, W, w) != mine; });
      if (!beyond) continue;
      Word next = G.multiply(M1, run_generator(c1, static_cast<int>(j)));
      int d2 = d_P(G, placed_chambers(c1, next), B);
      if (d2 >= d) fail(Status::invariant_violation, "word reduction did not decrease d_P");
      M1 = next;
      d = d2;
      moved = true;
    }
    // No half-space of one contains the other disk: limit sets differ.
    if (!moved) return true;
  }
  auto k1 = placed_keys(c1, M1), k2 = placed_keys(c2, M2);
  if (k1[c1.n] != k2[c2.n]) return true;
  std::sort(k1.begin(), k1.end());
  std::sort(k2.begin(), k2.end());
  if (k1 != k2) fail(Status::invariant_violation, "aligned disks share F2 but differ");
  auto gluings = [&](const OrbifoldComplex& c, const Word& M) {
    std::map<Word, Word> g;
    for (std::size_t j = 0; j < c.runs.size(); ++j) {
      const Cell& cell = c.cells[c.runs[j].sides[0].first];
      Wall W = make_wall(G, G.multiply(M, cell.chamber), c.runs[j].face);
      g[W.reflection] = conjugate(G, M, run_generator(c, static_cast<int>(j)));
    }
    return g;
  };
  return gluings(c1, M1) != gluings(c2, M2);
}

int euler_characteristic(const OrbifoldComplex& c) {
  long sides = 0;
  for (auto& cell : c.cells)
    for (auto& sd : cell.sides) {
      if (!has_partner(sd)) fail(Status::not_surface, "complex has reflector edges");
      ++sides;
    }
  long V = static_cast<long>(vertex_stars(c).size());
  return static_cast<int>(V - sides / 2 + static_cast<long>(c.cells.size()));
}

int genus(const OrbifoldComplex& c) {
  int chi = euler_characteristic(c);
  if (chi % 2 != 0) fail(Status::not_surface, "odd Euler characteristic for an orientable surface");
  return (2 - chi) / 2;
}

Length orbifold_euler_characteristic(const OrbifoldComplex& c) {
  Length chi(static_cast<std::int64_t>(c.cells.size()));
  for (auto& cell : c.cells) chi -= Length(static_cast<std::int64_t>(cell.sides.size()), 2);
  for (auto& st : vertex_stars(c)) {
    if (st.interior) chi += 1;
    else if (st.degree > 0) chi += Length(static_cast<std::int64_t>(st.cells.size()), st.degree);
  }
  return chi;
}

int closed_cut_count(int n) { return 2 * n - 2; }

OrbifoldComplex closed_surface_variant(const DiskSpec& spec, const Involution& sigma) {
  if (spec.n % 2 == 0) fail(Status::invalid_input, "closed variant needs odd n");
  OrbifoldComplex base = base_complex(spec);
  ChainFaces cf = chain_faces(spec);
  const CoxeterGroup& G = *base.group;
  const int m = cut_edge_count(spec.n), per = spec.n + 1;
  const int K = static_cast<int>(base.runs.size());
  if (K % 2 != 0) fail(Status::construction, "odd number of runs");
  if (static_cast<int>(sigma.size()) != 4 * m || !is_involution(sigma))
    fail(Status::invalid_input, "sigma must be an involution on " + std::to_string(4 * m) + " cut edges");
  int cut_colour = -1;
  for (int r = 0; r < K; ++r)
    if (base.runs[r].cut >= 0) {
      if (cut_colour >= 0 && cut_colour != r % 2) fail(Status::construction, "cut runs differ in colour");
      cut_colour = r % 2;
    }

  OrbifoldComplex c = base;
  c.copies = 4;
  c.cells.clear();
  for (int g = 0; g < 4; ++g)
    for (int x = 0; x < per; ++x) {
      Cell cell = base.cells[x];
      cell.copy = g;
      for (auto& sd : cell.sides)
        if (sd.kind == SideKind::internal) sd.cell += g * per;
      c.cells.push_back(cell);
    }
  // Uncut runs join copy g to copy g ^ colour bit by the wall reflection.
  for (int r = 0; r < K; ++r) {
    const Run& run = base.runs[r];
    if (run.cut >= 0) continue;
    const int bit = 1 << (r % 2);
    for (int g = 0; g < 4; ++g)
      for (auto [x, s] : run.sides) {
        CellSide& sd = c.cells[g * per + x].sides[s];
        sd.kind = SideKind::glued;
        sd.cell = (g ^ bit) * per + x;
        sd.side = s;
        sd.element = run.wall.reflection;
      }
  }
  auto parity = [](int g) { return __builtin_popcount(static_cast<unsigned>(g)) % 2; };
  const int cbit = 1 << cut_colour;
  for (int inst = 0; inst < 4 * m; ++inst) {
    int g = inst / m, i = inst % m;
    int partner = sigma[inst];
    if (partner == inst) {
      int std_partner = (g ^ cbit) * m + i;
      if (sigma[std_partner] != std_partner)
        fail(Status::invalid_input, "fixed cut edge whose standard partner is re-glued");
      for (auto [x, s] : base.runs[cut_run(base, i)].sides) {
        CellSide& sd = c.cells[g * per + x].sides[s];
        sd.kind = SideKind::glued;
        sd.cell = (g ^ cbit) * per + x;
        sd.side = s;
        sd.element = base.runs[cut_run(base, i)].wall.reflection;
      }
      continue;
    }
    if (partner < inst) continue;
    int g2 = partner / m, j = partner % m;
    if (parity(g) == parity(g2)) fail(Status::construction, "pairing reverses orientation");
    pair_cuts(c, cf, i, g, j, g2);
  }
  for (auto& st : vertex_stars(c))
    if (!st.interior || st.degree != 4)
      fail(Status::construction, "vertex of degree " + std::to_string(st.degree) + " in closed variant");
  c.sigma = sigma;
  (void)G;
  return c;
}

std::vector<Involution> closed_gluings(const DiskSpec& spec) {
  if (spec.n % 2 == 0) fail(Status::invalid_input, "closed variant needs odd n");
  const int m = cut_edge_count(spec.n), N = 4 * m;
  auto parity = [&](int inst) { return __builtin_popcount(static_cast<unsigned>(inst / m)) % 2; };
  std::vector<Involution> out;
  Involution s(N, -1);
  std::function<void(int)> rec = [&](int i) {
    while (i < N && s[i] >= 0) ++i;
    if (i == N) {
      try {
        closed_surface_variant(spec, s);
        out.push_back(s);
      } catch (const Error& e) {
        if (e.code() != Status::construction) throw;
      }
      return;
    }
    for (int j = i + 1; j < N; ++j) {
      if (s[j] >= 0 || parity(i) == parity(j)) continue;
      s[i] = j;
      s[j] = i;
      rec(i + 1);
      s[i] = s[j] = -1;
    }
  };
  rec(0);
  return out;
}

namespace {

// Relabelling the four copies gives the same immersed surface.
Involution deck_canonical(const Involution& s, int m) {
  Involution best;
  for (int h = 0; h < 4; ++h) {
    Involution t(s.size());
    auto move = [&](int inst) { return ((inst / m) ^ h) * m + inst % m; };
    for (std::size_t x = 0; x < s.size(); ++x) t[move(static_cast<int>(x))] = move(s[x]);
    if (best.empty() || t < best) best = t;
  }
  return best;
}

template <class F>
void parallel_for(std::size_t n, int workers, F&& body) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errs(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace

CensusReport census(const DiskSpec& base, int n_lo, int n_hi, SigmaFilter filter,
                    const std::vector<Involution>& explicit_sigmas, int workers) {
  if (n_lo < 1 || n_hi < n_lo) fail(Status::invalid_input, "bad n range");
  if (n_hi > kMaxCensusN) fail(Status::resource, "census guard is n <= " + std::to_string(kMaxCensusN));
  CensusReport rep;
  {
    DiskSpec s3 = base;
    s3.n = 3;
    auto closed = closed_surface_variant(s3, identity_involution(closed_cut_count(3)));
    rep.c0 = -euler_characteristic(closed) - 3;
  }
  for (int n = n_lo; n <= n_hi; ++n) {
    DiskSpec spec = base;
    spec.n = n;
    CensusRow row;
    row.n = n;
    row.cut_edges = cut_edge_count(n);
    std::vector<Involution> sigmas;
    for (auto& s : all_involutions(row.cut_edges)) {
      if (filter == SigmaFilter::transpositions && 2 * transposition_count(s) != row.cut_edges) continue;
      if (filter == SigmaFilter::explicit_list &&
          std::find(explicit_sigmas.begin(), explicit_sigmas.end(), s) == explicit_sigmas.end())
        continue;
      sigmas.push_back(s);
    }
    row.involutions = sigmas.size();
    std::vector<OrbifoldComplex> cx(sigmas.size());
    std::vector<std::string> inv(sigmas.size());
    parallel_for(sigmas.size(), workers, [&](std::size_t i) {
      cx[i] = glue_sigma(spec, sigmas[i]);
      auto h = halfspace_invariant(cx[i]);
      if (!h.adjacency_ok) fail(Status::invariant_violation, "transverse walls are not a loop");
      inv[i] = h.canonical();
    });
    // Pre-filter by invariant, confirm collisions with the full procedure.
    std::map<std::string, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < sigmas.size(); ++i) buckets[inv[i]].push_back(i);
    std::vector<std::size_t> reps;
    for (auto& [key, members] : buckets) {
      std::vector<std::size_t> local;
      if (members.size() > 1) row.prefilter_collisions += members.size() - 1;
      for (std::size_t i : members) {
        bool fresh = true;
        for (std::size_t r : local)
          if (!inequivalent(cx[r], cx[i])) fresh = false;
        if (fresh) local.push_back(i);
      }
      reps.insert(reps.end(), local.begin(), local.end());
    }
    row.classes = reps.size();
    std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) { return inv[a] < inv[b]; });
    for (std::size_t r : reps) row.detail.push_back({sigmas[r], inv[r]});
    for (std::size_t i = 0; i < sigmas.size(); ++i)
      for (std::size_t j = 0; j < sigmas.size(); ++j)
        if ((inv[i] == inv[j]) == inequivalent(cx[i], cx[j])) row.halfspace_agrees = false;

    if (n % 2 == 1) {
      auto closed = closed_surface_variant(spec, identity_involution(closed_cut_count(n)));
      int chi = euler_characteristic(closed);
      if (-chi - n != rep.c0) fail(Status::invariant_violation, "Euler characteristic not affine in n");
      row.has_genus = true;
      row.genus = genus(closed);
      row.factorial_bound = factorial(2 * row.genus - rep.c0 - 3);
      row.exp_bound = std::exp(row.genus * std::log(static_cast<double>(row.genus)));
      auto gl = closed_gluings(spec);
      row.closed_gluings = gl.size();
      std::set<Involution> classes;
      for (auto& s : gl) classes.insert(deck_canonical(s, row.cut_edges));
      row.closed_classes = classes.size();
      row.transposition_target = factorial(n - 1);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string census_csv(const CensusReport& r) {
  std::ostringstream o;
  o << "# schema-version=1\n";
  o << "n,cut_edges,involutions,classes,genus,factorial_bound,exp_bound\n";
  for (auto& row : r.rows) {
    o << row.n << ',' << row.cut_edges << ',' << row.involutions << ',' << row.classes << ',';
    if (row.has_genus)
      o << row.genus << ',' << format_number(row.factorial_bound) << ',' << format_number(row.exp_bound);
    else
      o << "NA,NA,NA";
    o << '\n';
  }
  return o.str();
}

std::string census_detail(const CensusReport& r) {
  std::ostringstream o;
  o << "# schema-version=1\n";
  o << "c0 " << r.c0 << '\n';
  for (auto& row : r.rows) {
    o << "n " << row.n << " cut_edges " << row.cut_edges << " involutions " << row.involutions << " classes "
      << row.classes << " prefilter_collisions " << row.prefilter_collisions << " halfspace_agrees "
      << (row.halfspace_agrees ? "yes" : "no") << '\n';
    for (auto& cl : row.detail) o << "  class sigma " << to_cycles(cl.sigma) << " invariant " << cl.invariant << '\n';
    if (row.has_genus)
      o << "  closed genus " << row.genus << " gluings " << row.closed_gluings << " classes " << row.closed_classes
        << " target " << format_number(row.transposition_target) << " holds "
        << (static_cast<double>(row.closed_classes) >= row.transposition_target ? "yes" : "no") << '\n';
  }
  return o.str();
}

}  // namespace sc
