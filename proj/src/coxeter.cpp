#include "surfcensus/coxeter.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace sc {

CoxeterGroup::CoxeterGroup(const Polyhedron& P) : n_(P.num_faces()), comm_(n_ * n_, 0) {
  for (int s = 0; s < n_; ++s)
    for (int t = 0; t < n_; ++t) comm_[s * n_ + t] = (s == t || P.adjacent(s, t)) ? 1 : 0;
}

void CoxeterGroup::check(int s) const {
  if (s < 0 || s >= n_) fail(Status::invalid_input, "letter " + std::to_string(s) + " is not a face");
}

bool CoxeterGroup::right_descent(const Word& w, int s) const {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it == s) return true;
    if (!commute(*it, s)) return false;
  }
  return false;
}

Word CoxeterGroup::times(Word w, int s) const {
  check(s);
  for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
    if (w[i] == s) {
      w.erase(w.begin() + i);
      return w;
    }
    if (!commute(w[i], s)) break;
  }
  w.push_back(s);
  return w;
}

Word CoxeterGroup::normal_form(const Word& w) const {
  Word r;
  for (int s : w) r = times(std::move(r), s);
  // Shortlex: emit the smallest letter that commutes past everything before it.
  Word out;
  out.reserve(r.size());
  while (!r.empty()) {
    int best = -1;
    for (size_t i = 0; i < r.size(); ++i) {
      bool free = true;
      for (size_t j = 0; j < i && free; ++j) free = commute(r[j], r[i]);
      if (free && (best < 0 || r[i] < r[best])) best = static_cast<int>(i);
    }
    out.push_back(r[best]);
    r.erase(r.begin() + best);
  }
  return out;
}

int CoxeterGroup::word_length(const Word& w) const {
  Word r;
  for (int s : w) r = times(std::move(r), s);
  return static_cast<int>(r.size());
}

Word CoxeterGroup::multiply(const Word& a, const Word& b) const {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return normal_form(r);
}

Word CoxeterGroup::inverse(const Word& a) const {
  return normal_form(Word(a.rbegin(), a.rend()));
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Wall make_wall(const CoxeterGroup& G, const Word& ch, int s) {
  if (s < 0 || s >= G.rank()) fail(Status::invalid_input, "letter " + std::to_string(s) + " is not a face");
  Word u = G.normal_form(ch);
  // Strip right descents in the star of s.
  bool moved = true;
  while (moved) {
    moved = false;
    for (int t = 0; t < G.rank(); ++t)
      if (G.commute(t, s) && G.right_descent(u, t)) {
        u = G.times(u, t);
        moved = true;
      }
  }
  Wall w;
  w.chamber = G.normal_form(u);
  w.gen = s;
  Word r = w.chamber;
  r.push_back(s);
  r.insert(r.end(), w.chamber.rbegin(), w.chamber.rend());
  w.reflection = G.normal_form(r);
  return w;
}

int wall_side(const CoxeterGroup& G, const Wall& w, const Word& ch) {
  Word x = w.reflection;
  x.insert(x.end(), ch.begin(), ch.end());
  return G.word_length(x) < G.word_length(ch) ? -1 : 1;
}

bool walls_intersect(const CoxeterGroup& G, const Wall& a, const Wall& b) {
  if (a.reflection == b.reflection) return false;
  return G.multiply(a.reflection, b.reflection) == G.multiply(b.reflection, a.reflection);
}

std::vector<Wall> walls_between(const CoxeterGroup& G, const Word& a, const Word& b) {
  Word g = G.multiply(G.inverse(a), b);
  std::vector<Wall> out;
  Word cur = G.normal_form(a);
  for (int s : g) {
    out.push_back(make_wall(G, cur, s));
    cur = G.times(cur, s);
  }
  return out;
}

int d_P(const CoxeterGroup& G, const std::vector<Word>& A, const std::vector<Word>& B) {
  if (A.empty() || B.empty()) fail(Status::invalid_input, "d_P needs nonempty chamber sets");
  int count = 0;
  for (const Wall& w : walls_between(G, A[0], B[0])) {
    int sa = wall_side(G, w, A[0]), sb = wall_side(G, w, B[0]);
    bool ok = sa != sb;
    for (size_t i = 1; i < A.size() && ok; ++i) ok = wall_side(G, w, A[i]) == sa;
    for (size_t i = 1; i < B.size() && ok; ++i) ok = wall_side(G, w, B[i]) == sb;
    if (ok) ++count;
  }
  return count;
}

namespace {

std::mutex ball_mutex;
std::map<std::pair<std::vector<char>, int>, std::shared_ptr<const std::vector<Word>>> ball_cache;

}  // namespace

std::shared_ptr<const std::vector<Word>> cayley_ball(const CoxeterGroup& G, int r) {
  if (r < 0) fail(Status::invalid_input, "negative radius");
  if (r > kMaxBallRadius) fail(Status::resource, "ball radius above guard " + std::to_string(kMaxBallRadius));
  auto key = std::make_pair(G.commutation(), r);
  {
    std::lock_guard<std::mutex> lk(ball_mutex);
    auto it = ball_cache.find(key);
    if (it != ball_cache.end()) return it->second;
  }
  std::vector<Word> all{{}};
  std::vector<Word> layer{{}};
  for (int d = 1; d <= r; ++d) {
    std::set<Word> next;
    for (const Word& w : layer)
      for (int s = 0; s < G.rank(); ++s)
        if (!G.right_descent(w, s)) {
          Word x = w;
          x.push_back(s);
          next.insert(G.normal_form(x));
        }
    layer.assign(next.begin(), next.end());
    all.insert(all.end(), layer.begin(), layer.end());
  }
  auto ball = std::make_shared<const std::vector<Word>>(std::move(all));
  std::lock_guard<std::mutex> lk(ball_mutex);
  return ball_cache.emplace(key, ball).first->second;
}

}  // namespace sc
