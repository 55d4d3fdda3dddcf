#include "surfcensus/involution.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>

#include "surfcensus/error.hpp"

namespace sc {

bool is_involution(const Involution& s) {
  const int m = static_cast<int>(s.size());
  for (int i = 0; i < m; ++i)
    if (s[i] < 0 || s[i] >= m || s[s[i]] != i) return false;
  return true;
}

Involution identity_involution(int m) {
  Involution s(m);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

std::vector<Involution> all_involutions(int m) {
  std::vector<Involution> out;
  Involution s(m, -1);
  std::function<void(int)> rec = [&](int i) {
    while (i < m && s[i] >= 0) ++i;
    if (i == m) {
      out.push_back(s);
      return;
    }
    for (int j = i; j < m; ++j) {
      if (s[j] >= 0) continue;
      s[i] = j;
      s[j] = i;
      rec(i + 1);
      s[i] = s[j] = -1;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

int transposition_count(const Involution& s) {
  int c = 0;
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    if (s[i] > i) ++c;
  return c;
}

std::string to_cycles(const Involution& s) {
  std::string out;
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    if (s[i] > i) out += "(" + std::to_string(i + 1) + " " + std::to_string(s[i] + 1) + ")";
  return out.empty() ? "id" : out;
}

Involution parse_cycles(const std::string& text, int m) {
  Involution s = identity_involution(m);
  if (text == "id" || text.empty()) return s;
  size_t i = 0;
  auto bad = [&]() { fail(Status::invalid_input, "bad cycle notation: " + text); };
  auto number = [&]() {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
    size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) bad();
    int v = std::stoi(text.substr(i, j - i));
    i = j;
    return v;
  };
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '(') bad();
    ++i;
    int a = number(), b = number();
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size() || text[i] != ')') bad();
    ++i;
    if (a < 1 || b < 1 || a > m || b > m || a == b) bad();
    if (s[a - 1] != a - 1 || s[b - 1] != b - 1) fail(Status::invalid_input, "symbol used twice: " + text);
    s[a - 1] = b - 1;
    s[b - 1] = a - 1;
  }
  return s;
}

}  // namespace sc
