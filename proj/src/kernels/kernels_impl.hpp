#pragma once

#include <bit>
#include <cstdint>

#include "setfam/mask.hpp"

// Reference pair predicates shared by the scalar kernels, the AVX2 tail
// handling, and the one-off violates() entry point.  Each answers "does
// the unordered pair {a, b} violate the rule", with both orientations of
// the asymmetric rules folded in.

namespace setfam::detail {

inline bool hit_difference(SetMask a, SetMask b, std::uint32_t k) {
  return std::popcount(a & ~b) == static_cast<int>(k) ||
         std::popcount(b & ~a) == static_cast<int>(k);
}

inline bool hit_ratio(SetMask a, SetMask b, std::uint32_t p, std::uint32_t q) {
  const std::uint64_t dab = static_cast<std::uint64_t>(std::popcount(a & ~b));
  const std::uint64_t dba = static_cast<std::uint64_t>(std::popcount(b & ~a));
  return q * dab == p * dba || q * dba == p * dab;
}

inline bool hit_symdiff(SetMask a, SetMask b, std::uint32_t d) {
  return std::popcount(a ^ b) == static_cast<int>(d);
}

inline bool hit_meet(SetMask a, SetMask b, std::uint32_t k) {
  return std::popcount(a & b) == static_cast<int>(k);
}

}  // namespace setfam::detail
