// One line per acceptance criterion. Exit 0 when every failure is a known-red criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "surfcensus/coxeter.hpp"
#include "surfcensus/graphcovers.hpp"
#include "surfcensus/involution.hpp"
#include "surfcensus/metricgraph.hpp"
#include "surfcensus/polyhedron.hpp"
#include "surfcensus/surfaces.hpp"

using namespace sc;

namespace {

// E2 by the distance rule misses a-lifts for most involutions.
const std::set<int> kKnownRed{3};
constexpr int kGoldenC = 30;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Involutions counted by brute force over all permutations.
long involutions_by_permutation(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    bool inv = true;
    for (int i = 0; i < m && inv; ++i) inv = p[p[i]] == i;
    count += inv;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

struct CoverRun {
  std::map<int, std::size_t> distinct, involutions, round_trip_ok, distance_bad, orbit_bad;
  double seconds = 0, seconds_n5 = 0;
};

CoverRun run_covers() {
  CoverRun r;
  auto t0 = Clock::now();
  for (int n = 1; n <= 6; ++n) {
    std::set<Involution> seen;
    for (auto& s : all_involutions(n)) {
      auto t = truncated_universal_cover(cut_basepoint(build_cover(n, s)), default_radius(n), n);
      auto orbit = tree_invariants(t, E1Rule::orbit);
      auto dist = tree_invariants(t, E1Rule::distance);
      auto rec = recover_sigma(t, orbit, n);
      seen.insert(rec);
      ++r.involutions[n];
      r.round_trip_ok[n] += rec == s;
      r.distance_bad[n] += dist.e2_mismatches > 0;
      r.orbit_bad[n] += orbit.e2_mismatches > 0;
    }
    r.distinct[n] = seen.size();
    if (n == 5) r.seconds_n5 = seconds_since(t0);
  }
  r.seconds = seconds_since(t0);
  return r;
}

Outcome c1(const CoverRun& r) {
  Outcome o{true, ""};
  std::ostringstream d;
  for (int m = 1; m <= 6; ++m) {
    long want = involutions_by_permutation(m);
    d << (m > 1 ? " " : "") << r.distinct.at(m) << "/" << want;
    o.pass = o.pass && static_cast<long>(r.distinct.at(m)) == want;
  }
  o.pass = o.pass && r.seconds < 60;
  d << " distinct/I(m), " << r.seconds << "s";
  o.detail = d.str();
  return o;
}

Outcome c2(const CoverRun& r) {
  Outcome o{true, ""};
  std::size_t total = 0, ok = 0;
  for (int n = 1; n <= 5; ++n) total += r.involutions.at(n), ok += r.round_trip_ok.at(n);
  o.pass = ok == total && r.seconds_n5 < 120;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) + " involutions recovered";
  return o;
}

Outcome c3(const CoverRun& r) {
  Outcome o{true, ""};
  std::ostringstream d;
  d << "distance-rule E2 differs from a-lifts for";
  for (int n = 1; n <= 6; ++n) {
    d << ' ' << r.distance_bad.at(n) << "/" << r.involutions.at(n);
    o.pass = o.pass && r.distance_bad.at(n) == 0;
  }
  d << " involutions (n=1..6)";
  o.detail = d.str();
  return o;
}

std::vector<int> subset(unsigned mask, int faces) {
  std::vector<int> s;
  for (int f = 0; f < faces; ++f)
    if (mask >> f & 1) s.push_back(f);
  return s;
}

Outcome c4() {
  auto t0 = Clock::now();
  auto P = dodecahedron();
  bool valid = validate_right_angled(P).ok();
  // Oracle: the minimum face count over small-boundary disks, recomputed here.
  int small_min = 100;
  std::uint64_t disks = 0;
  for (unsigned m = 1; m < 4096; ++m) {
    auto s = subset(m, 12);
    if (!is_face_disk(P, s)) continue;
    ++disks;
    if (s.size() < 12 && make_face_disk(P, s).degree_two_vertices <= 4)
      small_min = std::min<int>(small_min, static_cast<int>(s.size()));
  }
  auto rep = degree_lemma_report(P, 1);
  double secs = seconds_since(t0);
  Outcome o;
  o.pass = valid && rep.subsets == 4096 && rep.disks == disks && rep.holds && rep.min_faces_small == small_min &&
           small_min > 6 && secs < 10;
  o.detail = "subsets " + std::to_string(rep.subsets) + ", disks " + std::to_string(rep.disks) +
             ", fewest faces with |V(D,2)|<=4: " + std::to_string(small_min) + ", " + std::to_string(secs) + "s";
  return o;
}

std::vector<FaceDisk> convex_disks(const Polyhedron& P, int max_faces) {
  std::set<std::vector<int>> found, layer;
  for (int f = 0; f < P.num_faces(); ++f) layer.insert({f});
  for (int sz = 1; sz <= max_faces; ++sz) {
    std::set<std::vector<int>> next;
    for (auto& s : layer) {
      if (is_face_disk(P, s)) found.insert(s);
      if (sz == max_faces) continue;
      for (int f : s)
        for (int i = 0; i < static_cast<int>(P.face(f).size()); ++i) {
          int g = P.neighbor(f, i);
          if (std::count(s.begin(), s.end(), g)) continue;
          auto t = s;
          t.push_back(g);
          std::sort(t.begin(), t.end());
          next.insert(t);
        }
    }
    layer.swap(next);
  }
  std::vector<FaceDisk> out;
  for (auto& s : found) {
    auto D = make_face_disk(P, s);
    if (satisfies_convexity(P, D)) out.push_back(D);
  }
  return out;
}

bool amalgam_convex(const Polyhedron& P1, const FaceDisk& D1, const Polyhedron& P2, const FaceDisk& D2, int T1,
                    int T2, int& done) {
  int s = matching_shift(P1, D1, T1, P2, D2, T2);
  if (s < 0) return true;
  auto r = amalgamate_disks(P1, D1, P2, D2, {T1, T2, s});
  ++done;
  return r.glued.poly.well_formed() && is_face_disk(r.glued.poly, r.disk.faces) &&
         satisfies_convexity(r.glued.poly, r.disk);
}

Outcome c5(std::uint64_t seed) {
  std::vector<Polyhedron> hosts{dodecahedron(), double_across(dodecahedron(), 0).poly};
  std::vector<std::vector<FaceDisk>> convex;
  for (auto& h : hosts) convex.push_back(convex_disks(h, 3));
  std::mt19937_64 rng(seed);
  int random_done = 0, violations = 0, attempts = 0;
  while (random_done < 1000 && attempts < 200000) {
    ++attempts;
    std::size_t h1 = rng() % 2, h2 = rng() % 2;
    auto& D1 = convex[h1][rng() % convex[h1].size()];
    auto& D2 = convex[h2][rng() % convex[h2].size()];
    int T1 = D1.transverse[rng() % D1.transverse.size()];
    int T2 = D2.transverse[rng() % D2.transverse.size()];
    violations += !amalgam_convex(hosts[h1], D1, hosts[h2], D2, T1, T2, random_done);
  }
  // Every pair of two-face disks of the dodecahedron, every transverse pair.
  const auto& P = hosts[0];
  std::vector<FaceDisk> pairs;
  for (int e = 0; e < P.num_edges(); ++e) {
    std::vector<int> s{P.edges()[e][0], P.edges()[e][1]};
    std::sort(s.begin(), s.end());
    pairs.push_back(make_face_disk(P, s));
  }
  int exhaustive_done = 0;
  for (auto& D1 : pairs)
    for (auto& D2 : pairs)
      for (int T1 : D1.transverse)
        for (int T2 : D2.transverse) violations += !amalgam_convex(P, D1, P, D2, T1, T2, exhaustive_done);
  Outcome o;
  o.pass = random_done == 1000 && violations == 0 && exhaustive_done > 0;
  o.detail = std::to_string(random_done) + " randomized + " + std::to_string(exhaustive_done) +
             " two-face amalgamations, " + std::to_string(violations) + " violations";
  return o;
}

// Tits representation on the dual cone; faithful, so images identify elements.
struct Tits {
  int n;
  std::vector<int> B;
  explicit Tits(const Polyhedron& P) : n(P.num_faces()), B(n * n) {
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) B[s * n + t] = s == t ? 2 : (P.adjacent(s, t) ? 0 : -2);
  }
  using Vec = std::vector<long long>;
  Vec act(int s, Vec f) const {
    long long fs = f[s];
    for (int t = 0; t < n; ++t) f[t] -= B[s * n + t] * fs;
    return f;
  }
  Vec image(const Word& w) const {
    Vec f(n, 1);
    for (auto it = w.rbegin(); it != w.rend(); ++it) f = act(*it, f);
    return f;
  }
};

Outcome c6() {
  auto t0 = Clock::now();
  auto P = dodecahedron();
  CoxeterGroup G(P);
  Tits T(P);
  // BFS over the Cayley graph in the Tits image.
  std::map<Tits::Vec, int> dist{{Tits::Vec(12, 1), 0}};
  std::vector<Tits::Vec> layer{Tits::Vec(12, 1)};
  for (int d = 1; d <= 4; ++d) {
    std::vector<Tits::Vec> next;
    for (auto& f : layer)
      for (int s = 0; s < 12; ++s) {
        auto g = T.act(s, f);
        if (dist.emplace(g, d).second) next.push_back(g);
      }
    layer.swap(next);
  }
  std::map<Word, Tits::Vec> nf_to_img;
  std::map<Tits::Vec, Word> img_to_nf;
  bool agree = true;
  std::size_t words = 0;
  std::function<void(Word&)> visit = [&](Word& w) {
    ++words;
    Word nf = G.normal_form(w);
    auto img = T.image(w);
    agree = agree && nf_to_img.emplace(nf, img).first->second == img;
    agree = agree && img_to_nf.emplace(img, nf).first->second == nf;
    if (w.size() == 4) return;
    for (int s = 0; s < 12; ++s) {
      w.push_back(s);
      visit(w);
      w.pop_back();
    }
  };
  Word w;
  visit(w);
  agree = agree && img_to_nf.size() == dist.size();
  auto ball = cayley_ball(G, 4);
  bool dp = ball->size() == dist.size();
  for (auto& x : *ball) {
    int len = G.word_length(x);
    auto it = dist.find(T.image(x));
    dp = dp && it != dist.end() && it->second == len && d_P(G, {Word{}}, {x}) == len;
  }
  double secs = seconds_since(t0);
  Outcome o;
  o.pass = agree && dp && secs < 300;
  o.detail = std::to_string(words) + " words, " + std::to_string(img_to_nf.size()) + " classes, radius-4 ball " +
             std::to_string(ball->size()) + ", " + std::to_string(secs) + "s";
  return o;
}

Outcome c7() {
  auto rep = census(default_disk_spec(dodecahedron(), 1), 1, 4);
  Outcome o{true, ""};
  std::ostringstream d;
  for (auto& row : rep.rows) {
    long want = involutions_by_permutation(row.cut_edges);
    o.pass = o.pass && static_cast<long>(row.involutions) == want && row.classes == row.involutions &&
             row.halfspace_agrees;
    d << "n=" << row.n << ':' << row.classes << '/' << row.involutions << ' ';
  }
  o.detail = d.str() + "classes/involutions, half-space invariant agrees";
  return o;
}

Outcome c8() {
  Outcome o{true, ""};
  int c0 = 0;
  bool frozen = false;
  std::size_t tested = 0;
  for (int n : {3, 5, 7}) {
    auto spec = default_disk_spec(dodecahedron(), n);
    auto sigmas = closed_gluings(spec);
    sigmas.push_back(identity_involution(closed_cut_count(n)));
    for (auto& s : sigmas) {
      auto c = closed_surface_variant(spec, s);
      int chi = euler_characteristic(c);
      if (!frozen) c0 = -chi - n, frozen = true;
      o.pass = o.pass && chi == -n - c0 && 2 * genus(c) == n + c0 + 2;
      ++tested;
    }
  }
  o.detail = "c0=" + std::to_string(c0) + " over " + std::to_string(tested) + " surfaces at n=3,5,7";
  return o;
}

Outcome c9() {
  Outcome o{true, ""};
  int checked = 0;
  for (int v = 0; v <= 4; ++v)
    for (int n = 0; n <= 3; ++n) {
      auto g = count_bounded_degree_graphs(v, n);
      double bound = std::pow(static_cast<double>(v), static_cast<double>(n) * v);
      o.pass = o.pass && static_cast<double>(g.count) <= bound && g.holds;
      ++checked;
    }
  o.detail = std::to_string(checked) + " (|V|, n) cells, count <= |V|^(n|V|) throughout";
  return o;
}

Outcome c10(std::uint64_t seed) {
  auto q = thresholds(2, 1);
  // u(k,c) and (k', c', s) recomputed from the formulas.
  double k = 2, c = 1, kp = k, cp = 3 * k * c, s = k * c;
  bool formulas = q.k_prime == kp && q.c_prime == cp && q.s == s && q.u == 336;
  auto suite = run_qi_suite(2, 1, 20, seed);
  int iso = 0, non = 0, iso_ok = 0, non_ok = 0;
  for (auto& r : suite.rows) {
    if (r.isomorphic) ++iso, iso_ok += r.witness;
    else ++non, non_ok += !r.witness;
  }
  Outcome o;
  o.pass = formulas && iso == 20 && non == 20 && iso_ok == 20 && non_ok == 20;
  o.detail = "u(2,1)=" + std::to_string(static_cast<long>(q.u)) + ", non-isomorphic without witness " +
             std::to_string(non_ok) + "/20, isomorphic with witness " + std::to_string(iso_ok) + "/20";
  return o;
}

Outcome c11() {
  auto P = dodecahedron();
  int c = c_of_P(P, 1);
  int brute = 0;
  for (unsigned m = 1; m < 4096; ++m) {
    auto s = subset(m, 12);
    if (is_face_disk(P, s)) brute = std::max(brute, closed_edge_count(P, s));
  }
  Outcome o;
  o.pass = c == kGoldenC && brute == kGoldenC;
  o.detail = "c(P)=" + std::to_string(c) + " c2=" + std::to_string(8 * c + 1);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240601;
  CoverRun covers;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"graph-cover census", [&] {
         covers = run_covers();
         return c1(covers);
       }},
      {"sigma round trip", [&] { return c2(covers); }},
      {"E2 identification", [&] { return c3(covers); }},
      {"dodecahedron validation and degree lemma", c4},
      {"convexity preservation", [&] { return c5(seed); }},
      {"coxeter oracle agreement", c6},
      {"surface census", c7},
      {"euler bookkeeping", c8},
      {"bounded-degree graph bound", c9},
      {"quasi-isometry desk check", [&] { return c10(seed); }},
      {"bounds report", c11},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("%-4s %2d %s: %s%s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.c_str(), !o.pass && kKnownRed.count(id) ? " (known red)" : "", seconds_since(t0));
    if (id == 3) {
      std::size_t bad = 0, total = 0;
      for (auto& [n, k] : covers.orbit_bad) bad += k, total += covers.involutions[n];
      std::printf("info    orbit-rule E2 differs from a-lifts for %zu/%zu involutions\n", bad, total);
    }
  }
  bool unexpected = std::any_of(failed.begin(), failed.end(), [](int id) { return !kKnownRed.count(id); });
  std::printf("summary %zu/%zu pass\n", criteria.size() - failed.size(), criteria.size());
  return unexpected ? 1 : 0;
}
