#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "surfcensus/coxeter.hpp"

using namespace sc;

namespace {

// Tits representation, dual action on the all-ones vector of the fundamental chamber.
// Faithful, so the image vector identifies the group element.
struct Tits {
  int n;
  std::vector<int> B;  // 2 * bilinear form: 2, 0 (adjacent), -2 (otherwise)
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

// Gallery distance by breadth-first search in the Tits image.
std::map<Tits::Vec, int> bfs_ball(const Tits& T, int radius) {
  std::map<Tits::Vec, int> dist;
  std::vector<Tits::Vec> layer{Tits::Vec(T.n, 1)};
  dist[layer[0]] = 0;
  for (int d = 1; d <= radius; ++d) {
    std::vector<Tits::Vec> next;
    for (auto& f : layer)
      for (int s = 0; s < T.n; ++s) {
        auto g = T.act(s, f);
        if (dist.emplace(g, d).second) next.push_back(g);
      }
    layer.swap(next);
  }
  return dist;
}

}  // namespace

TEST_CASE("basic relations") {
  auto P = dodecahedron();
  CoxeterGroup G(P);
  int s = 0, t = P.neighbor(0, 0);
  int far = -1;
  for (int f = 1; f < 12; ++f)
    if (!P.adjacent(0, f)) far = f;
  CHECK(G.normal_form({s, s}).empty());
  CHECK(G.normal_form({s, t, s}) == Word{t});
  CHECK(G.normal_form({s, far, s}).size() == 3);
  CHECK(G.word_length({}) == 0);
  CHECK(G.word_length({s, s, t}) == 1);
  CHECK_THROWS_AS(G.normal_form({12}), Error);
}

TEST_CASE("normal forms agree with the Tits representation up to length 4") {
  auto P = dodecahedron();
  CoxeterGroup G(P);
  Tits T(P);
  std::map<Word, Tits::Vec> nf_to_img;
  std::map<Tits::Vec, Word> img_to_nf;
  std::size_t words = 0;
  std::vector<Word> frontier{{}};
  for (int len = 0; len <= 4; ++len) {
    std::vector<Word> next;
    for (auto& w : frontier) {
      ++words;
      Word nf = G.normal_form(w);
      auto img = T.image(w);
      auto [it1, new1] = nf_to_img.emplace(nf, img);
      auto [it2, new2] = img_to_nf.emplace(img, nf);
      CHECK(it1->second == img);
      CHECK(it2->second == nf);
      CHECK(G.normal_form(nf) == nf);
      if (len < 4)
        for (int s = 0; s < 12; ++s) {
          auto x = w;
          x.push_back(s);
          next.push_back(x);
        }
    }
    frontier.swap(next);
  }
  CHECK(words == 1 + 12 + 144 + 1728 + 20736);
  CHECK(nf_to_img.size() == img_to_nf.size());
}

TEST_CASE("length equals gallery distance") {
  auto P = dodecahedron();
  CoxeterGroup G(P);
  Tits T(P);
  auto dist = bfs_ball(T, 5);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    Word w(rng() % 7);
    for (int& x : w) x = static_cast<int>(rng() % 12);
    int len = G.word_length(w);
    auto it = dist.find(T.image(w));
    if (it == dist.end()) {
      CHECK(len == 6);
      CHECK(w.size() == 6);
    } else {
      CHECK(len == it->second);
    }
    Word inv(w.rbegin(), w.rend());
    CHECK(G.word_length(inv) == len);
    Word v(rng() % 4);
    for (int& x : v) x = static_cast<int>(rng() % 12);
    Word wv = w;
    wv.insert(wv.end(), v.begin(), v.end());
    CHECK(G.word_length(wv) <= len + G.word_length(v));
  }
}

TEST_CASE("cayley balls") {
  auto P = dodecahedron();
  CoxeterGroup G(P);
  CHECK(cayley_ball(G, 0)->size() == 1);
  CHECK(cayley_ball(G, 1)->size() == 13);
  // Ordered pairs s != t; st = ts exactly when adjacent.
  int pairs = 0, adjacent = 0;
  for (int s = 0; s < 12; ++s)
    for (int t = 0; t < 12; ++t)
      if (s != t) {
        ++pairs;
        if (P.adjacent(s, t)) ++adjacent;
      }
  CHECK(cayley_ball(G, 2)->size() == static_cast<std::size_t>(1 + 12 + pairs - adjacent / 2));
  CHECK(cayley_ball(G, 2)->size() == 115);
  Tits T(P);
  auto dist = bfs_ball(T, 4);
  CHECK(cayley_ball(G, 4)->size() == dist.size());
  CHECK(cayley_ball(G, 2).get() == cayley_ball(G, 2).get());
  CHECK_THROWS_AS(cayley_ball(G, 6), Error);
}

TEST_CASE("walls and sides") {
  auto P = dodecahedron();
  CoxeterGroup G(P);
  int s = 3;
  CHECK(wall_side(G, make_wall(G, {}, s), {}) == 1);
  CHECK(wall_side(G, make_wall(G, {}, s), {s}) == -1);
  // Parity of crossings along a random gallery.
  std::mt19937 rng(5);
  auto ball = cayley_ball(G, 3);
  for (const Word& ch : *ball) {
    for (int t = 0; t < 12; ++t) {
      Wall w = make_wall(G, ch, t);
      CHECK(make_wall(G, G.times(ch, t), t) == w);
      CHECK(G.word_length(w.chamber) <= G.word_length(ch));
      Word gallery = ch;
      int extra = static_cast<int>(rng() % 12);
      gallery.insert(gallery.begin() + static_cast<long>(rng() % (gallery.size() + 1)), {extra, extra});
      int crossings = 0;
      Word cur;
      for (int x : gallery) {
        Word r = cur;
        r.push_back(x);
        r.insert(r.end(), cur.rbegin(), cur.rend());
        if (G.normal_form(r) == w.reflection) ++crossings;
        cur.push_back(x);
      }
      CHECK(wall_side(G, w, ch) == (crossings % 2 ? -1 : 1));
    }
  }
  // Extending a normal form by one letter flips exactly the crossed wall.
  for (const Word& ch : *cayley_ball(G, 2))
    for (int t = 0; t < 12; ++t) {
      Word next = G.times(ch, t);
      Wall crossed = make_wall(G, ch, t);
      for (const Word& u : *cayley_ball(G, 2))
        for (int x = 0; x < 12; ++x) {
          Wall w = make_wall(G, u, x);
          bool flips = wall_side(G, w, ch) != wall_side(G, w, next);
          CHECK(flips == (w == crossed));
        }
    }
}

TEST_CASE("d_P") {
  auto P = dodecahedron();
  CoxeterGroup G(P);
  CHECK(d_P(G, {{}}, {{2}}) == 1);
  for (const Word& w : *cayley_ball(G, 4)) CHECK(d_P(G, {{}}, {w}) == G.word_length(w));
  std::vector<Word> A{{}, {0}, {1}};
  CHECK(d_P(G, A, A) == 0);
  // Walls through two adjacent faces meet.
  int t = P.neighbor(0, 0);
  CHECK(walls_intersect(G, make_wall(G, {}, 0), make_wall(G, {}, t)));
  int far = -1;
  for (int f = 1; f < 12; ++f)
    if (!P.adjacent(0, f)) far = f;
  CHECK_FALSE(walls_intersect(G, make_wall(G, {}, 0), make_wall(G, {}, far)));
}
