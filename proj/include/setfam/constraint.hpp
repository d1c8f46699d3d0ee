#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "setfam/mask.hpp"

namespace setfam {

// A constraint forbids an unordered pair of distinct sets from standing in
// the stated relation, in either orientation.

struct ForbiddenDifference {  // |A \ B| == k
  std::uint32_t k;
};

struct ForbiddenRatio {  // q * |A \ B| == p * |B \ A|
  std::uint32_t p;
  std::uint32_t q;
};

struct ForbiddenSymmetricDifference {  // |A xor B| == d
  std::uint32_t d;
};

struct ForbiddenIntersection {  // |A and B| == k
  std::uint32_t k;
};

using ConstraintSpec = std::variant<ForbiddenDifference, ForbiddenRatio,
                                    ForbiddenSymmetricDifference,
                                    ForbiddenIntersection>;

// A family must satisfy every rule in the set (conjunction).
using RuleSet = std::vector<ConstraintSpec>;

// Validating factories.  Parameter violations throw Error(ParseError).
ConstraintSpec forbidden_difference(std::uint32_t k);          // k >= 1
ConstraintSpec forbidden_ratio(std::uint32_t p, std::uint32_t q);  // p <= q, q >= 1, gcd = 1
ConstraintSpec forbidden_symmetric_difference(std::uint32_t d);    // d >= 1
ConstraintSpec forbidden_intersection(std::uint32_t k);

// Canonical text forms: "diff:1", "ratio:2:3", "symdiff:2", "meet:0".
std::string rule_text(const ConstraintSpec& rule);

struct PairStats {
  int diff_ab;  // |A \ B|
  int diff_ba;  // |B \ A|
  int meet;     // |A and B|
  int symdiff;  // |A xor B|
};

inline PairStats pair_stats(SetMask a, SetMask b) {
  return PairStats{
      std::popcount(a & ~b),
      std::popcount(b & ~a),
      std::popcount(a & b),
      std::popcount(a ^ b),
  };
}

// True when the unordered pair {a, b} is forbidden (checks both
// orientations of the asymmetric rules).
bool violates(const ConstraintSpec& rule, SetMask a, SetMask b);
bool violates_any(const RuleSet& rules, SetMask a, SetMask b);

// Whether any pair with |A| = sa, |B| = sb inside [n] could violate the
// rule.  Exact, from the arithmetic of the four pair statistics; used to
// skip whole layer pairs during family checks.
bool layer_pair_feasible(const ConstraintSpec& rule, int sa, int sb, int n);

}  // namespace setfam
