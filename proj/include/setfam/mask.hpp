#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "setfam/errors.hpp"

namespace setfam {

// A subset of the ground set [n] = {1, ..., n} packed into a word: element i
// lives in bit i-1.  Everything downstream (constraint checks, chain walks,
// the branch and bound) works on these words, so n is capped at 63 and all
// size/overlap queries reduce to popcounts.
using SetMask = std::uint64_t;

inline constexpr int kMaxUniverse = 63;

constexpr SetMask universe_mask(int n) {
  return n == 0 ? 0 : (~SetMask{0} >> (64 - n));
}

constexpr SetMask element_bit(int i) { return SetMask{1} << (i - 1); }

constexpr bool contains(SetMask m, int i) { return (m >> (i - 1)) & 1; }

constexpr int set_size(SetMask m) { return std::popcount(m); }

inline void require_universe(int n) {
  if (n < 0 || n > kMaxUniverse)
    fail(Err::UniverseTooLarge,
         "ground set size " + std::to_string(n) + " outside [0, 63]");
}

// Elements of m in increasing order.
std::vector<int> elements_of(SetMask m);

// Validates range and strict growth; throws ElementOutOfRange / DuplicateSet.
SetMask mask_from_elements(std::span<const int> elements, int n);

std::string format_set(SetMask m);  // "{1,4,7}"

// Visits every k-subset of [n] in increasing mask order (Gosper's hack).
template <class F>
void for_each_subset_of_size(int n, int k, F&& visit) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    visit(SetMask{0});
    return;
  }
  SetMask v = (SetMask{1} << k) - 1;
  const SetMask limit = universe_mask(n);
  while (true) {
    visit(v);
    SetMask t = v | (v - 1);
    if (t == ~SetMask{0}) return;
    SetMask low = ~t & (t + 1);  // lowest bit that ripples on increment
    SetMask next = (t + 1) | ((low - 1) >> (std::countr_zero(v) + 1));
    if (next > limit) return;
    v = next;
  }
}

// Visits every k-subset of base in lexicographic order of the sorted
// element lists (not mask order; sort afterwards if that matters).
template <class F>
void for_each_ksubset_of(SetMask base, int k, F&& visit) {
  const int sz = set_size(base);
  if (k < 0 || k > sz) return;
  std::vector<int> elems = elements_of(base);
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    SetMask sub = 0;
    for (int i = 0; i < k; ++i) sub |= element_bit(elems[idx[i]]);
    visit(sub);
    int p = k - 1;
    while (p >= 0 && idx[p] == sz - k + p) --p;
    if (p < 0) return;
    ++idx[p];
    for (int i = p + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace setfam
