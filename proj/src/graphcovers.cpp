#include "surfcensus/graphcovers.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include <json.hpp>

#include "surfcensus/error.hpp"

namespace sc {

namespace {

// End 2e sits at edges[e].src, end 2e+1 at edges[e].dst.
std::vector<std::vector<int>> ends_by_vertex(int nv, const std::vector<LabeledEdge>& edges) {
  std::vector<std::vector<int>> ends(nv);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    ends[edges[e].src].push_back(2 * e);
    ends[edges[e].dst].push_back(2 * e + 1);
  }
  return ends;
}

int end_vertex(const std::vector<LabeledEdge>& edges, int end) {
  const auto& e = edges[end / 2];
  return end % 2 ? e.dst : e.src;
}

bool graph_connected(int nv, const std::vector<LabeledEdge>& edges) {
  if (nv == 0) return true;
  auto ends = ends_by_vertex(nv, edges);
  std::vector<char> seen(nv, 0);
  std::vector<int> st{0};
  seen[0] = 1;
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    for (int en : ends[v]) {
      int w = end_vertex(edges, en ^ 1);
      if (!seen[w]) seen[w] = 1, st.push_back(w);
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace

bool covering_condition(const PointedCover& c) {
  std::vector<int> out_a(c.num_vertices, 0), in_a(c.num_vertices, 0);
  std::vector<int> out_b(c.num_vertices, 0), in_b(c.num_vertices, 0);
  for (auto& e : c.edges) {
    if (e.src < 0 || e.dst < 0 || e.src >= c.num_vertices || e.dst >= c.num_vertices) return false;
    if (e.label == 'a') {
      ++out_a[e.src];
      ++in_a[e.dst];
    } else if (e.label == 'b') {
      ++out_b[e.src];
      ++in_b[e.dst];
    } else {
      return false;
    }
  }
  for (int v = 0; v < c.num_vertices; ++v)
    if (out_a[v] != 1 || in_a[v] != 1 || out_b[v] != 1 || in_b[v] != 1) return false;
  return graph_connected(c.num_vertices, c.edges);
}

PointedCover build_cover(int n, const Involution& sigma) {
  if (n < 1) fail(Status::invalid_input, "n must be at least 1");
  if (static_cast<int>(sigma.size()) != n || !is_involution(sigma))
    fail(Status::invalid_input, "sigma must be an involution of {1..n}");
  PointedCover c;
  const int N = 4 * n;
  c.num_vertices = N;
  for (int i = 1; i <= N; ++i) c.edges.push_back({i - 1, i % N, 'a'});
  for (int i = 1; i <= N; ++i) {
    bool loop = i % 2 == 0 || i >= 2 * n;
    if (!loop && sigma[(i + 1) / 2 - 1] == (i + 1) / 2 - 1) loop = true;
    if (loop) {
      if (i == N) c.base_edge = static_cast<int>(c.edges.size());
      c.edges.push_back({i - 1, i - 1, 'b'});
    }
  }
  for (int i = 0; i < n; ++i) {
    int j = sigma[i];
    if (j == i) continue;
    c.edges.push_back({2 * i, 2 * j, 'b'});
  }
  return c;
}

PointedCover initcover(int s) {
  if (s < 2) fail(Status::invalid_input, "initcover needs s >= 2");
  PointedCover c;
  const int N = 2 * s;
  c.num_vertices = N;
  for (int i = 0; i < N; ++i) c.edges.push_back({i, (i + 1) % N, 'a'});
  c.edges.push_back({0, s, 'b'});
  c.edges.push_back({s, 0, 'b'});
  for (int i = 1; i < N; ++i)
    if (i != s) {
      if (i == 1) c.base_edge = static_cast<int>(c.edges.size());
      c.edges.push_back({i, i, 'b'});
    }
  return c;
}

BoundaryGraph cut_basepoint(const PointedCover& c) {
  if (c.base_edge < 0 || c.base_edge >= static_cast<int>(c.edges.size()) ||
      c.edges[c.base_edge].label != 'b')
    fail(Status::invalid_input, "basepoint must lie inside a b-edge");
  BoundaryGraph g;
  g.num_vertices = c.num_vertices + 2;
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e)
    if (e != c.base_edge) g.edges.push_back(c.edges[e]);
  const auto& cut = c.edges[c.base_edge];
  int p1 = c.num_vertices, p2 = c.num_vertices + 1;
  g.edges.push_back({cut.src, p1, 'b'});
  g.edges.push_back({p2, cut.dst, 'b'});
  g.boundary = {p1, p2};
  return g;
}

bool TruncatedTree::is_boundary(int x) const {
  int v = proj[x];
  return std::find(graph.boundary.begin(), graph.boundary.end(), v) != graph.boundary.end();
}

int default_radius(int n) { return 2 * n + 1; }
int radius_guard(int n) { return 8 * n + 4; }

TruncatedTree truncated_universal_cover(const BoundaryGraph& g, int R, int n) {
  if (R < 1) fail(Status::invalid_input, "radius must be at least 1");
  if (R > radius_guard(n))
    fail(Status::resource, "radius " + std::to_string(R) + " above guard " + std::to_string(radius_guard(n)));
  if (g.boundary.empty()) fail(Status::invalid_input, "graph has no boundary");
  TruncatedTree t;
  t.graph = g;
  t.radius = R;
  auto ends = ends_by_vertex(g.num_vertices, g.edges);
  std::vector<int> arrival{-1};
  t.parent.push_back(-1);
  t.via.push_back(-1);
  t.proj.push_back(g.boundary[0]);
  t.depth.push_back(0);
  for (std::size_t x = 0; x < t.proj.size(); ++x) {
    if (t.depth[x] == R) continue;
    for (int en : ends[t.proj[x]]) {
      if (en == arrival[x]) continue;
      if (t.proj.size() >= kMaxTreeNodes) fail(Status::resource, "tree node budget exceeded");
      t.parent.push_back(static_cast<int>(x));
      t.via.push_back(en / 2);
      t.proj.push_back(end_vertex(g.edges, en ^ 1));
      t.depth.push_back(t.depth[x] + 1);
      arrival.push_back(en ^ 1);
    }
  }
  t.frontier.assign(t.proj.size(), 0);
  for (std::size_t x = 0; x < t.proj.size(); ++x)
    if (t.depth[x] == R && ends[t.proj[x]].size() > 1) t.frontier[x] = 1;
  return t;
}

namespace {

// Invariants of the quotient; exact for the universal cover since paths lift.
struct QuotientInvariants {
  std::vector<char> E1, E2;  // per graph edge
  std::vector<int> d_a;      // per graph vertex
};

std::vector<int> stable_colours(const BoundaryGraph& g, const std::vector<std::vector<int>>& ends) {
  const int nv = g.num_vertices;
  std::vector<int> col(nv);
  for (int v = 0; v < nv; ++v) {
    bool b = std::find(g.boundary.begin(), g.boundary.end(), v) != g.boundary.end();
    col[v] = static_cast<int>(ends[v].size()) * 2 + (b ? 1 : 0);
  }
  int classes = -1;
  for (;;) {
    std::vector<std::vector<int>> sig(nv);
    for (int v = 0; v < nv; ++v) {
      sig[v].push_back(col[v]);
      std::vector<int> nb;
      for (int en : ends[v]) nb.push_back(col[end_vertex(g.edges, en ^ 1)]);
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    auto keys = sig;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (int v = 0; v < nv; ++v)
      col[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v]) - keys.begin());
    if (static_cast<int>(keys.size()) == classes) return col;
    classes = static_cast<int>(keys.size());
  }
}

QuotientInvariants quotient_invariants(const BoundaryGraph& g, E1Rule rule) {
  const int nv = g.num_vertices;
  const int ne = static_cast<int>(g.edges.size());
  auto ends = ends_by_vertex(nv, g.edges);
  std::vector<char> is_bd(nv, 0);
  for (int b : g.boundary) is_bd[b] = 1;

  QuotientInvariants q;
  q.E1.assign(ne, 0);
  if (rule == E1Rule::distance) {
    std::vector<int> dist(nv, -1);
    std::deque<int> dq;
    for (int b : g.boundary) dist[b] = 0, dq.push_back(b);
    while (!dq.empty()) {
      int v = dq.front();
      dq.pop_front();
      for (int en : ends[v]) {
        int w = end_vertex(g.edges, en ^ 1);
        if (dist[w] < 0) dist[w] = dist[v] + 1, dq.push_back(w);
      }
    }
    for (int e = 0; e < ne; ++e) q.E1[e] = dist[g.edges[e].src] == dist[g.edges[e].dst];
  } else {
    auto col = stable_colours(g, ends);
    for (int e = 0; e < ne; ++e) {
      int u = g.edges[e].src, v = g.edges[e].dst;
      q.E1[e] = col[u] == col[v] || is_bd[u] || is_bd[v];
    }
  }

  q.E2.assign(ne, 0);
  for (int e = 0; e < ne; ++e) {
    if (q.E1[e]) continue;
    int adj = 0;
    for (int mine : {2 * e, 2 * e + 1})
      for (int en : ends[end_vertex(g.edges, mine)])
        if (en != mine && q.E1[en / 2]) ++adj;
    q.E2[e] = adj >= 2;
  }

  // Shortest path to the boundary with every edge but the last in E2.
  q.d_a.assign(nv, -1);
  std::deque<int> dq;
  for (int b : g.boundary) q.d_a[b] = 0;
  for (int v = 0; v < nv; ++v) {
    if (is_bd[v]) continue;
    for (int en : ends[v])
      if (is_bd[end_vertex(g.edges, en ^ 1)]) {
        q.d_a[v] = 1;
        dq.push_back(v);
        break;
      }
  }
  while (!dq.empty()) {
    int v = dq.front();
    dq.pop_front();
    for (int en : ends[v]) {
      if (!q.E2[en / 2]) continue;
      int w = end_vertex(g.edges, en ^ 1);
      if (q.d_a[w] < 0) q.d_a[w] = q.d_a[v] + 1, dq.push_back(w);
    }
  }
  return q;
}

}  // namespace

TreeInvariants tree_invariants(const TruncatedTree& t, E1Rule rule) {
  auto q = quotient_invariants(t.graph, rule);
  TreeInvariants inv;
  inv.rule = rule;
  const std::size_t N = t.size();
  inv.E1.assign(N, 0);
  inv.E2.assign(N, 0);
  inv.d_a.assign(N, -1);
  int maxd = 0;
  for (std::size_t x = 0; x < N; ++x) {
    inv.d_a[x] = q.d_a[t.proj[x]];
    maxd = std::max(maxd, inv.d_a[x]);
    if (x == 0) continue;
    int e = t.via[x];
    inv.E1[x] = q.E1[e];
    inv.E2[x] = q.E2[e];
    if (static_cast<bool>(inv.E2[x]) != (t.graph.edges[e].label == 'a')) ++inv.e2_mismatches;
  }
  inv.V.assign(maxd + 1, {});
  for (std::size_t x = 0; x < N; ++x)
    if (inv.d_a[x] >= 0) inv.V[inv.d_a[x]].push_back(static_cast<int>(x));
  if (rule == E1Rule::orbit && inv.e2_mismatches > 0)
    fail(Status::invariant_violation,
         std::to_string(inv.e2_mismatches) + " tree edges where E2 differs from the a-lifts");
  return inv;
}

Involution recover_sigma(const TruncatedTree& t, const TreeInvariants& inv, int n) {
  Involution s = identity_involution(n);
  for (std::size_t x = 1; x < t.size(); ++x) {
    int di = inv.d_a[t.parent[x]], dj = inv.d_a[x];
    if (di < 2 || dj < 2 || di % 2 || dj % 2 || di == dj) continue;
    int i = di / 2 - 1, j = dj / 2 - 1;
    if (i >= n || j >= n) fail(Status::malformed, "V_i adjacency outside 1..n");
    if ((s[i] != i && s[i] != j) || (s[j] != j && s[j] != i))
      fail(Status::malformed, "inconsistent V_i adjacency");
    s[i] = j;
    s[j] = i;
  }
  return s;
}

Involution recover_sigma(const TruncatedTree& t, int n) {
  return recover_sigma(t, tree_invariants(t, E1Rule::orbit), n);
}

MetricGraph collapse_to_bouquet(const PointedCover& c, int btilde) {
  if (btilde < 0 || btilde >= static_cast<int>(c.edges.size()) || c.edges[btilde].label != 'b')
    fail(Status::invalid_input, "btilde must be a b-edge");
  const int nv = c.num_vertices;
  std::vector<char> in(nv, 0);
  std::vector<int> st{c.edges[btilde].src};
  in[st[0]] = 1;
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    for (auto& e : c.edges)
      if (e.label == 'b' && (e.src == v || e.dst == v)) {
        int w = e.src == v ? e.dst : e.src;
        if (!in[w]) in[w] = 1, st.push_back(w);
      }
  }
  std::vector<int> next(nv, -1);
  for (auto& e : c.edges)
    if (e.label == 'a') next[e.src] = e.dst;
  MetricGraph g;
  g.num_vertices = 1;
  int covered = 0, a_edges = 0;
  for (auto& e : c.edges) a_edges += e.label == 'a';
  for (int v = 0; v < nv; ++v) {
    if (!in[v]) continue;
    int len = 0, w = v;
    do {
      if (next[w] < 0) fail(Status::malformed, "a-lifts are not a union of cycles");
      w = next[w];
      ++len;
    } while (!in[w] && len <= nv);
    covered += len;
    g.add_edge(0, 0, Length(len));
  }
  if (covered != a_edges || g.edges.size() != 2)
    fail(Status::malformed, "collapse does not give a bouquet of two circles");
  return g;
}

GraphCount count_bounded_degree_graphs(int vertices, int n) {
  if (vertices < 0 || n < 0) fail(Status::invalid_input, "negative size");
  if (vertices > 5 || n > 4) fail(Status::resource, "graph count guard is |V| <= 5, n <= 4");
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < vertices; ++u)
    for (int v = u + 1; v < vertices; ++v) pairs.push_back({u, v});
  GraphCount r;
  const std::uint32_t total = 1u << pairs.size();
  for (std::uint32_t m = 0; m < total; ++m) {
    int deg[5] = {0, 0, 0, 0, 0};
    bool ok = true;
    for (std::size_t i = 0; i < pairs.size() && ok; ++i)
      if (m >> i & 1) ok = ++deg[pairs[i].first] <= n && ++deg[pairs[i].second] <= n;
    if (ok) ++r.count;
  }
  r.bound = 1;
  for (int i = 0; i < n * vertices; ++i) r.bound *= static_cast<std::uint64_t>(vertices);
  r.holds = r.count <= r.bound;
  return r;
}

std::string cover_to_json(const PointedCover& c) {
  nlohmann::json j;
  j["vertices"] = c.num_vertices;
  auto es = nlohmann::json::array();
  for (auto& e : c.edges) es.push_back({e.src, e.dst, std::string(1, e.label)});
  j["edges"] = es;
  j["basepoint"] = {{"edge", c.base_edge}, {"position", "interior"}};
  return j.dump();
}

}  // namespace sc
