#pragma once

#include <cstdint>
#include <vector>

#include "setfam/constraint.hpp"
#include "setfam/family.hpp"

namespace setfam {

// Residue selection for the sum/power-sum constructions: either a fixed
// vector (r_1..r_k, one residue per exponent), or "best" (the vector whose
// class is largest, ties broken by lexicographically smallest vector).
struct ResidueChoice {
  bool best = true;
  std::vector<std::uint32_t> residues;

  static ResidueChoice best_choice() { return {}; }
  static ResidueChoice fixed(std::vector<std::uint32_t> residues) {
    return ResidueChoice{false, std::move(residues)};
  }
};

// Chosen residues travel with the family so callers can report them.
struct ResidueFamily {
  Family family;
  std::vector<std::uint32_t> residues;
};

// All sets of size floor(n/2) whose element sum is congruent to r mod n.
// With choice = best, the result has at least ceil(C(n, n/2) / n) members
// and passes ForbiddenDifference(1).
ResidueFamily a_star(int n, const ResidueChoice& choice = {});

// All sets of size floor(n/2) whose d-th power sums (elements reduced mod
// n first) hit the chosen residue for every d in 1..k.  Requires n prime,
// 1 <= k < n.  Passes ForbiddenDifference(k) for any residue vector; the
// pigeonhole size bound ceil(C(n, n/2) / n^k) holds for choice = best.
ResidueFamily a_star_k(int n, int k, const ResidueChoice& choice = {});

// The q-p consecutive layers starting at t = floor((n - (q-p-1)) / 2).
// Passes ForbiddenRatio(p, q).
Family middle_layers(int n, std::uint32_t p, std::uint32_t q);

// Scans all masks over [n] in seeded random order, keeping each one that
// conflicts with nothing already kept.  Deterministic in (n, rules, seed);
// the output is maximal: no further set can be added.
Family greedy_valid_family(int n, const RuleSet& rules, std::uint64_t seed);
Family greedy_valid_family(int n, const ConstraintSpec& rule,
                           std::uint64_t seed);

}  // namespace setfam
