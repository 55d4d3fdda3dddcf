#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sc {

// sigma[i] is the image of i (0-based); sigma[sigma[i]] == i. Fixed points allowed.
using Involution = std::vector<int>;

bool is_involution(const Involution& s);
Involution identity_involution(int m);
// Every involution of {0..m-1}, lexicographic in the image vector.
std::vector<Involution> all_involutions(int m);
int transposition_count(const Involution& s);

// 1-based cycle notation, "(1 2)(3 4)"; "id" for the identity.
std::string to_cycles(const Involution& s);
// Accepts "(1 2)(3 4)" or "id"; throws invalid_input.
Involution parse_cycles(const std::string& text, int m);

}  // namespace sc
