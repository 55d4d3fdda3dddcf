#include "surfcensus/metricgraph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>

namespace sc {

void MetricGraph::add_edge(int u, int v, Length len) {
  if (len <= 0) fail(Status::invalid_input, "edge length must be positive");
  if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
    fail(Status::invalid_input, "edge endpoint out of range");
  edges.push_back({u, v, len});
}

std::vector<int> MetricGraph::degrees() const {
  std::vector<int> d(num_vertices, 0);
  for (auto& e : edges) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

namespace {

void check_point(const MetricGraph& g, const GraphPoint& p) {
  if (p.edge >= 0) {
    if (p.edge >= static_cast<int>(g.edges.size())) fail(Status::invalid_input, "point on unknown edge");
    if (p.t < 0 || p.t > g.edges[p.edge].len) fail(Status::invalid_input, "point outside its edge");
  } else if (p.vertex < 0 || p.vertex >= g.num_vertices) {
    fail(Status::invalid_input, "point on unknown vertex");
  }
}

struct Dist {
  bool finite = false;
  Length d{0};
};

std::vector<Dist> dijkstra(const MetricGraph& g, const GraphPoint& x) {
  check_point(g, x);
  std::vector<Dist> D(g.num_vertices);
  std::vector<std::vector<std::pair<int, Length>>> adj(g.num_vertices);
  for (auto& e : g.edges) {
    adj[e.u].push_back({e.v, e.len});
    adj[e.v].push_back({e.u, e.len});
  }
  using Item = std::pair<Length, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  auto relax = [&](int v, Length d) {
    if (!D[v].finite || d < D[v].d) {
      D[v] = {true, d};
      pq.push({d, v});
    }
  };
  if (x.edge >= 0) {
    const auto& e = g.edges[x.edge];
    relax(e.u, x.t);
    relax(e.v, e.len - x.t);
  } else {
    relax(x.vertex, Length(0));
  }
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != D[v].d) continue;
    for (auto& [w, len] : adj[v]) relax(w, d + len);
  }
  return D;
}

}  // namespace

std::vector<Length> distances_from(const MetricGraph& g, const GraphPoint& x) {
  auto D = dijkstra(g, x);
  std::vector<Length> out;
  for (auto& d : D) {
    if (!d.finite) fail(Status::invalid_input, "graph is disconnected");
    out.push_back(d.d);
  }
  return out;
}

bool connected(const MetricGraph& g) {
  if (g.num_vertices == 0) return true;
  for (auto& d : dijkstra(g, GraphPoint::at_vertex(0)))
    if (!d.finite) return false;
  return true;
}

Length distance(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y) {
  check_point(g, y);
  auto D = dijkstra(g, x);
  bool have = false;
  Length best{0};
  auto offer = [&](const Dist& d, Length extra) {
    if (!d.finite) return;
    Length v = d.d + extra;
    if (!have || v < best) best = v, have = true;
  };
  if (y.edge >= 0) {
    const auto& e = g.edges[y.edge];
    offer(D[e.u], y.t);
    offer(D[e.v], e.len - y.t);
    if (x.edge == y.edge) offer({true, Length(0)}, x.t > y.t ? x.t - y.t : y.t - x.t);
  } else {
    offer(D[y.vertex], Length(0));
    if (x.edge < 0 && x.vertex == y.vertex) offer({true, Length(0)}, Length(0));
  }
  if (!have) fail(Status::invalid_input, "points lie in different components");
  return best;
}

QIParams thresholds(double k, double c) {
  if (!(k > 0) || !(c > 0)) fail(Status::invalid_input, "k and c must be positive");
  if (k < 1 || c < 1) fail(Status::invalid_input, "k and c must be at least 1");
  QIParams p;
  p.k = k;
  p.c = c;
  p.k_prime = k;
  p.c_prime = 3 * k * c;
  p.s = k * c;
  p.u = 6 * k * k * k * (k * k + 3) * c;
  p.t = 3 * k * k * (k * k + 2) * c;
  p.t_prime = std::max((p.k_prime * p.k_prime + 2) * c, k * (k * k + 2) * c);
  p.boundary_regime = k <= 1 || c <= 1;
  return p;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

// Double-precision view of a metric graph with all-pairs vertex distances.
struct Net {
  const MetricGraph* g;
  int n;
  std::vector<double> len;
  std::vector<double> D;          // n*n
  std::vector<int> next_edge;     // n*n, first edge of a shortest path, -1 on diagonal
  struct Pt {
    int edge;  // -1 for a vertex
    int v;
    double t;
  };

  explicit Net(const MetricGraph& G) : g(&G), n(G.num_vertices) {
    for (auto& e : G.edges) len.push_back(boost::rational_cast<double>(e.len));
    D.assign(n * n, kInf);
    next_edge.assign(n * n, -1);
    for (int s = 0; s < n; ++s) {
      // Dijkstra with deterministic ties: smaller edge id wins.
      auto& row = D;
      row[s * n + s] = 0;
      std::vector<char> done(n, 0);
      std::vector<int> first(n, -1);
      for (int it = 0; it < n; ++it) {
        int v = -1;
        for (int w = 0; w < n; ++w)
          if (!done[w] && row[s * n + w] < kInf && (v < 0 || row[s * n + w] < row[s * n + v])) v = w;
        if (v < 0) break;
        done[v] = 1;
        for (int e = 0; e < static_cast<int>(G.edges.size()); ++e) {
          const auto& E = G.edges[e];
          for (int side = 0; side < 2; ++side) {
            int a = side ? E.v : E.u, b = side ? E.u : E.v;
            if (a != v || done[b]) continue;
            double d = row[s * n + v] + len[e];
            if (d < row[s * n + b] - kEps) {
              row[s * n + b] = d;
              first[b] = v == s ? e : first[v];
            }
          }
        }
      }
      for (int w = 0; w < n; ++w) next_edge[s * n + w] = first[w];
    }
  }

  double vd(int a, int b) const { return D[a * n + b]; }

  double dist(const Pt& p, const Pt& q) const {
    auto ends = [&](const Pt& x, int& a, double& da, int& b, double& db) {
      if (x.edge < 0) {
        a = b = x.v;
        da = db = 0;
      } else {
        a = g->edges[x.edge].u;
        b = g->edges[x.edge].v;
        da = x.t;
        db = len[x.edge] - x.t;
      }
    };
    int a1, b1, a2, b2;
    double da1, db1, da2, db2;
    ends(p, a1, da1, b1, db1);
    ends(q, a2, da2, b2, db2);
    double best = std::min({da1 + vd(a1, a2) + da2, da1 + vd(a1, b2) + db2,
                            db1 + vd(b1, a2) + da2, db1 + vd(b1, b2) + db2});
    if (p.edge >= 0 && p.edge == q.edge) best = std::min(best, std::fabs(p.t - q.t));
    return best;
  }

  std::vector<Pt> samples(int density) const {
    std::vector<Pt> out;
    for (int v = 0; v < n; ++v) out.push_back({-1, v, 0});
    for (int e = 0; e < static_cast<int>(len.size()); ++e) {
      int m = static_cast<int>(std::ceil(len[e] * density - kEps));
      for (int j = 1; j < m; ++j) out.push_back({e, -1, len[e] * j / m});
    }
    return out;
  }

  // Point at distance x along the canonical geodesic from a to b.
  Pt along(int a, int b, double x) const {
    int cur = a;
    while (cur != b) {
      int e = next_edge[cur * n + b];
      const auto& E = g->edges[e];
      if (x <= len[e] + kEps) {
        x = std::min(x, len[e]);
        return E.u == cur ? Pt{e, -1, x} : Pt{e, -1, len[e] - x};
      }
      x -= len[e];
      cur = E.u == cur ? E.v : E.u;
    }
    return {-1, b, 0};
  }
};

bool within(double d1, double d2, double k, double c) {
  return d2 <= k * d1 + c + kEps && d2 >= d1 / k - c - kEps;
}

}  // namespace

std::optional<QIWitness> search_quasi_isometry(const MetricGraph& g1, const MetricGraph& g2,
                                               double k, double c, int density) {
  if (density < 1) fail(Status::invalid_input, "density must be positive");
  if (k < 1 || c < 0) fail(Status::invalid_input, "need k >= 1 and c >= 0");
  if (!connected(g1) || !connected(g2)) fail(Status::invalid_input, "graphs must be connected");
  if (g1.num_vertices == 0 || g2.num_vertices == 0) return std::nullopt;
  Net N1(g1), N2(g2);
  auto S1 = N1.samples(density);
  auto S2 = N2.samples(density);
  if (S1.size() > kMaxQISamples || S2.size() > kMaxQISamples)
    fail(Status::resource, "quasi-isometry sample budget exceeded");
  const int n1 = N1.n, n2 = N2.n;

  std::vector<int> phi(n1, -1);
  std::optional<QIWitness> found;

  auto image = [&](const Net::Pt& p) -> Net::Pt {
    if (p.edge < 0) return {-1, phi[p.v], 0};
    const auto& E = g1.edges[p.edge];
    int a = phi[E.u], b = phi[E.v];
    double L = N2.vd(a, b);
    return N2.along(a, b, L * p.t / N1.len[p.edge]);
  };

  // Pairs among a coarse subset first; a necessary condition, so exactness is kept.
  std::vector<int> coarse;
  {
    std::vector<std::vector<int>> on_edge(g1.edges.size());
    for (int i = 0; i < static_cast<int>(S1.size()); ++i)
      if (S1[i].edge < 0) coarse.push_back(i);
      else on_edge[S1[i].edge].push_back(i);
    for (auto& ids : on_edge)
      for (int q = 1; q <= 3 && !ids.empty(); ++q) coarse.push_back(ids[ids.size() * q / 4]);
  }
  // Points within c of a point on edge ab lie on edges at a or b when c is below every length.
  double min_len2 = kInf;
  for (double l : N2.len) min_len2 = std::min(min_len2, l);
  const bool local = c + kEps < min_len2;
  std::vector<std::vector<int>> incident(n2);
  for (int e = 0; e < static_cast<int>(g2.edges.size()); ++e) {
    incident[g2.edges[e].u].push_back(e);
    if (g2.edges[e].v != g2.edges[e].u) incident[g2.edges[e].v].push_back(e);
  }

  auto verify = [&]() {
    std::vector<Net::Pt> img;
    img.reserve(S1.size());
    for (auto& p : S1) img.push_back(image(p));
    for (size_t i = 0; i < coarse.size(); ++i)
      for (size_t j = i + 1; j < coarse.size(); ++j)
        if (!within(N1.dist(S1[coarse[i]], S1[coarse[j]]), N2.dist(img[coarse[i]], img[coarse[j]]), k, c))
          return false;
    std::vector<std::vector<int>> at_edge(g2.edges.size()), at_vertex(n2);
    for (int i = 0; i < static_cast<int>(img.size()); ++i)
      (img[i].edge < 0 ? at_vertex[img[i].v] : at_edge[img[i].edge]).push_back(i);
    auto near_any = [&](const Net::Pt& q, const std::vector<int>& ids) {
      for (int i : ids)
        if (N2.dist(img[i], q) <= c + kEps) return true;
      return false;
    };
    for (auto& q : S2) {
      bool near = false;
      if (local) {
        std::vector<int> ends;
        if (q.edge < 0) ends = {q.v};
        else ends = {g2.edges[q.edge].u, g2.edges[q.edge].v}, near = near_any(q, at_edge[q.edge]);
        for (int a : ends) {
          if (near) break;
          near = near_any(q, at_vertex[a]);
          for (int e : incident[a])
            if (!near) near = near_any(q, at_edge[e]);
        }
      } else {
        for (auto& p : img)
          if (N2.dist(p, q) <= c + kEps) {
            near = true;
            break;
          }
      }
      if (!near) return false;
    }
    for (size_t i = 0; i < S1.size(); ++i)
      for (size_t j = i + 1; j < S1.size(); ++j)
        if (!within(N1.dist(S1[i], S1[j]), N2.dist(img[i], img[j]), k, c)) return false;
    return true;
  };

  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x == n1) return verify();
    for (int y = 0; y < n2; ++y) {
      bool ok = true;
      for (int z = 0; z < x && ok; ++z) ok = within(N1.vd(x, z), N2.vd(y, phi[z]), k, c);
      if (!ok) continue;
      phi[x] = y;
      if (rec(x + 1)) return true;
    }
    phi[x] = -1;
    return false;
  };
  if (rec(0)) found = QIWitness{phi, S1.size()};
  return found;
}

namespace {

using Colouring = std::vector<int>;

void refine(const std::vector<int>& A, int n, Colouring& col) {
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> s{col[v]};
      std::vector<std::pair<int, int>> nb;
      for (int w = 0; w < n; ++w)
        if (A[v * n + w]) nb.push_back({col[w], A[v * n + w]});
      std::sort(nb.begin(), nb.end());
      for (auto& [cw, m] : nb) {
        s.push_back(cw);
        s.push_back(m);
      }
      sig[v] = {s, v};
    }
    std::vector<std::vector<int>> keys;
    for (auto& s : sig) keys.push_back(s.first);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    Colouring next(n);
    for (int v = 0; v < n; ++v)
      next[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v].first) - keys.begin());
    int before = *std::max_element(col.begin(), col.end());
    int after = *std::max_element(next.begin(), next.end());
    col = next;
    if (after == before) return;
  }
}

void search_canon(const std::vector<int>& A, int n, Colouring col, std::vector<int>& best) {
  refine(A, n, col);
  std::map<int, std::vector<int>> cells;
  for (int v = 0; v < n; ++v) cells[col[v]].push_back(v);
  int target = -1;
  size_t size = n + 1;
  for (auto& [c, vs] : cells)
    if (vs.size() > 1 && vs.size() < size) size = vs.size(), target = c;
  if (target < 0) {
    std::vector<int> M(n * n);
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) M[col[v] * n + col[w]] = A[v * n + w];
    if (best.empty() || M < best) best = M;
    return;
  }
  for (int v : cells[target]) {
    Colouring c2 = col;
    // Shift colours so v alone keeps `target`.
    for (int w = 0; w < n; ++w)
      if (c2[w] > target || (c2[w] == target && w != v)) c2[w] = 2 * c2[w] + 1;
      else c2[w] = 2 * c2[w];
    search_canon(A, n, c2, best);
  }
}

}  // namespace

std::vector<int> canonical_adjacency(const MetricGraph& g) {
  const int n = g.num_vertices;
  if (n > 12) fail(Status::resource, "isomorphism test limited to 12 vertices");
  std::vector<int> A(n * n, 0);
  for (auto& e : g.edges) {
    ++A[e.u * n + e.v];
    if (e.u != e.v) ++A[e.v * n + e.u];
  }
  std::vector<int> best;
  if (n == 0) return best;
  search_canon(A, n, Colouring(n, 0), best);
  return best;
}

bool is_isomorphic(const MetricGraph& g1, const MetricGraph& g2) {
  if (g1.num_vertices != g2.num_vertices || g1.edges.size() != g2.edges.size()) return false;
  return canonical_adjacency(g1) == canonical_adjacency(g2);
}


const std::vector<std::string>& pool_names() {
  static const std::vector<std::string> names{"K4", "K33", "prism", "Q3", "wagner", "K5", "octahedron"};
  return names;
}

MetricGraph pool_graph(const std::string& name) {
  MetricGraph g;
  auto edge = [&](int u, int v) { g.add_edge(u, v, Length(1)); };
  if (name == "K4" || name == "K5") {
    g.num_vertices = name == "K4" ? 4 : 5;
    for (int u = 0; u < g.num_vertices; ++u)
      for (int v = u + 1; v < g.num_vertices; ++v) edge(u, v);
  } else if (name == "K33") {
    g.num_vertices = 6;
    for (int u = 0; u < 3; ++u)
      for (int v = 3; v < 6; ++v) edge(u, v);
  } else if (name == "prism") {
    g.num_vertices = 6;
    for (int i = 0; i < 3; ++i) {
      edge(i, (i + 1) % 3);
      edge(3 + i, 3 + (i + 1) % 3);
      edge(i, 3 + i);
    }
  } else if (name == "Q3") {
    g.num_vertices = 8;
    for (int u = 0; u < 8; ++u)
      for (int b = 0; b < 3; ++b)
        if (u < (u ^ (1 << b))) edge(u, u ^ (1 << b));
  } else if (name == "wagner") {
    g.num_vertices = 8;
    for (int i = 0; i < 8; ++i) edge(i, (i + 1) % 8);
    for (int i = 0; i < 4; ++i) edge(i, i + 4);
  } else if (name == "octahedron") {
    g.num_vertices = 6;
    for (int u = 0; u < 6; ++u)
      for (int v = u + 1; v < 6; ++v)
        if (v != u + 3) edge(u, v);
  } else {
    fail(Status::invalid_input, "unknown graph " + name);
  }
  return g;
}

QISuite run_qi_suite(double k, double c, int pairs, std::uint64_t seed, int density) {
  QISuite out;
  out.params = thresholds(k, c);
  std::mt19937_64 rng(seed);
  const auto lo = static_cast<std::int64_t>(std::ceil(out.params.u)) + 1;
  auto lengthen = [&](MetricGraph g) {
    for (auto& e : g.edges) e.len = Length(lo + static_cast<std::int64_t>(rng() % 10));
    return g;
  };
  const auto& names = pool_names();
  const int P = static_cast<int>(names.size());
  for (int i = 0; i < pairs; ++i) {
    int a = static_cast<int>(rng() % P);
    int b = static_cast<int>(rng() % (P - 1));
    if (b >= a) ++b;
    MetricGraph g1 = lengthen(pool_graph(names[a]));
    MetricGraph g2 = lengthen(pool_graph(names[b]));
    QISuiteRow row{names[a], names[b], is_isomorphic(g1, g2), false};
    row.witness = search_quasi_isometry(g1, g2, k, c, density).has_value();
    if (row.witness && !row.isomorphic) ++out.non_isomorphic_with_witness;
    out.rows.push_back(row);
  }
  for (int i = 0; i < pairs; ++i) {
    int a = static_cast<int>(rng() % P);
    MetricGraph g1 = lengthen(pool_graph(names[a]));
    std::vector<int> perm(g1.num_vertices);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    MetricGraph g2;
    g2.num_vertices = g1.num_vertices;
    auto es = g1.edges;
    std::shuffle(es.begin(), es.end(), rng);
    for (auto& e : es) g2.add_edge(perm[e.u], perm[e.v], e.len);
    QISuiteRow row{names[a], names[a], is_isomorphic(g1, g2), false};
    row.witness = search_quasi_isometry(g1, g2, k, c, density).has_value();
    if (!row.witness) ++out.isomorphic_without_witness;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace sc
