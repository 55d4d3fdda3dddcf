#pragma once

#include <memory>
#include <vector>

#include "surfcensus/polyhedron.hpp"

namespace sc {

// Letters are face ids of the host polyhedron.
using Word = std::vector<int>;

// Right-angled Coxeter group of a polyhedron: s^2 = 1, st = ts for adjacent faces.
class CoxeterGroup {
 public:
  explicit CoxeterGroup(const Polyhedron& P);

  int rank() const { return n_; }
  bool commute(int s, int t) const { return comm_[s * n_ + t] != 0; }

  // Shortlex normal form; throws invalid_input on a bad letter.
  Word normal_form(const Word& w) const;
  int word_length(const Word& w) const;
  // Reduced word times s, not in shortlex order.
  Word times(Word reduced, int s) const;
  Word multiply(const Word& a, const Word& b) const;
  Word inverse(const Word& a) const;
  // Words in normal form compare equal iff elements are equal.
  bool equal(const Word& a, const Word& b) const { return normal_form(a) == normal_form(b); }
  bool right_descent(const Word& reduced, int s) const;

  // Identity of the underlying polyhedron, used as a cache key.
  const std::vector<char>& commutation() const { return comm_; }

 private:
  void check(int s) const;
  int n_ = 0;
  std::vector<char> comm_;  // s == t counts as commuting
};

// A wall is a conjugate reflection r = u s u^-1; u is the shortest adjacent chamber.
struct Wall {
  Word chamber;     // u, normal form
  int gen = -1;     // s
  Word reflection;  // normal form of u s u^-1

  bool operator==(const Wall& o) const { return reflection == o.reflection; }
  bool operator<(const Wall& o) const { return reflection < o.reflection; }
};

// Wall between chamber ch and ch*s.
Wall make_wall(const CoxeterGroup& G, const Word& ch, int s);
// +1 on the identity side, -1 otherwise.
int wall_side(const CoxeterGroup& G, const Wall& w, const Word& ch);
bool walls_intersect(const CoxeterGroup& G, const Wall& a, const Wall& b);
// Walls crossed by a geodesic gallery from a to b, in order.
std::vector<Wall> walls_between(const CoxeterGroup& G, const Word& a, const Word& b);

int d_P(const CoxeterGroup& G, const std::vector<Word>& A, const std::vector<Word>& B);

constexpr int kMaxBallRadius = 5;
// Chambers of length <= r, shortlex sorted. Memoized; r > 5 throws resource.
std::shared_ptr<const std::vector<Word>> cayley_ball(const CoxeterGroup& G, int r);

// Shortlex order on normal forms.
bool shortlex_less(const Word& a, const Word& b);

}  // namespace sc
