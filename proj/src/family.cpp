#include "setfam/family.hpp"

#include <algorithm>

namespace setfam {

namespace {

void require_family_universe(int n) {
  if (n < 1 || n > kMaxUniverse)
    fail(Err::UniverseTooLarge,
         "family universe " + std::to_string(n) + " outside [1, 63]");
}

void reject_duplicates(const std::vector<SetMask>& masks) {
  std::vector<SetMask> sorted = masks;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end())
    fail(Err::DuplicateSet, "set " + format_set(*dup) + " appears twice");
}

}  // namespace

Family make_family(int n, const std::vector<std::vector<int>>& element_lists) {
  require_family_universe(n);
  Family f;
  f.n = n;
  f.sets.reserve(element_lists.size());
  for (const std::vector<int>& elems : element_lists)
    f.sets.push_back(mask_from_elements(elems, n));
  reject_duplicates(f.sets);
  return f;
}

Family make_family_from_masks(int n, std::vector<SetMask> masks) {
  require_family_universe(n);
  const SetMask allowed = universe_mask(n);
  for (SetMask m : masks)
    if (m & ~allowed)
      fail(Err::ElementOutOfRange,
           "mask " + std::to_string(m) + " has elements beyond " +
               std::to_string(n));
  reject_duplicates(masks);
  Family f;
  f.n = n;
  f.sets = std::move(masks);
  return f;
}

FamilyIndex::FamilyIndex(const Family& family)
    : n_(family.n), sorted_(family.sets) {
  std::sort(sorted_.begin(), sorted_.end());
}

bool FamilyIndex::contains(SetMask m) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), m);
}

std::vector<std::size_t> layer_histogram(const Family& family) {
  std::vector<std::size_t> counts(family.n + 1, 0);
  for (SetMask m : family.sets) ++counts[set_size(m)];
  return counts;
}

namespace {

// s is within distance n^(2/3) of n/2 iff both |2s - n| cubes stay below
// 8 n^2; everything stays in small integers.
bool cube_within(int diff_twice, int n) {
  if (diff_twice <= 0) return true;
  const std::int64_t d = diff_twice;
  return d * d * d <= std::int64_t{8} * n * n;
}

}  // namespace

bool default_band_contains(int n, int size) {
  return cube_within(2 * size - n, n) && cube_within(n - 2 * size, n);
}

int default_band_floor(int n) {
  for (int s = 0; s <= n; ++s)
    if (default_band_contains(n, s)) return s;
  return 0;
}

int default_band_ceil(int n) {
  for (int s = n; s >= 0; --s)
    if (default_band_contains(n, s)) return s;
  return n;
}

TruncateResult truncate_to_band(const Family& family,
                                std::optional<Band> band) {
  TruncateResult out;
  out.family.n = family.n;
  out.removed = 0;
  for (SetMask m : family.sets) {
    const int s = set_size(m);
    const bool keep = band ? (band->lo <= s && s <= band->hi)
                           : default_band_contains(family.n, s);
    if (keep)
      out.family.sets.push_back(m);
    else
      ++out.removed;
  }
  return out;
}

std::vector<Family> partition_by_size_mod(const Family& family, int k) {
  if (k < 1) fail(Err::PreconditionViolated, "modulus must be at least 1");
  std::vector<Family> parts(k);
  for (Family& part : parts) part.n = family.n;
  for (SetMask m : family.sets)
    parts[set_size(m) % k].sets.push_back(m);
  return parts;
}

}  // namespace setfam
