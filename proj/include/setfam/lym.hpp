#pragma once

#include <cstdint>
#include <string>

#include "setfam/family.hpp"

namespace setfam {

// Exact binomial coefficient; requires 0 <= k <= n <= 63.  C(63,31) still
// fits in 64 bits, so no big-integer type is needed here.
std::uint64_t binomial(int n, int k);

// Sum over sizes s of |f^(s)| / C(n,s).  The sum is accumulated in exact
// rational arithmetic; `exact` is its reduced num/den rendering ("1/3"),
// `value` a double approximation, `cmp_one` the exact comparison against 1
// (-1, 0, +1).  Keeping the rational internal avoids dragging the bignum
// headers into every consumer.
struct LymSum {
  double value = 0.0;
  std::string exact = "0";
  int cmp_one = -1;
};

LymSum lym_sum(const Family& family);

}  // namespace setfam
