#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "setfam/mask.hpp"

namespace setfam {

// A finite family of distinct subsets of [n].  Builders validate; the
// struct itself is plain data so construction code can fill it directly.
struct Family {
  int n = 0;
  std::vector<SetMask> sets;

  std::size_t size() const { return sets.size(); }
};

Family make_family(int n, const std::vector<std::vector<int>>& element_lists);
Family make_family_from_masks(int n, std::vector<SetMask> masks);

// Sorted-mask view for O(log) membership tests.
class FamilyIndex {
 public:
  explicit FamilyIndex(const Family& family);

  int n() const { return n_; }
  std::size_t size() const { return sorted_.size(); }
  bool contains(SetMask m) const;
  const std::vector<SetMask>& sorted_masks() const { return sorted_; }

 private:
  int n_;
  std::vector<SetMask> sorted_;
};

// counts[s] = number of member sets of size s, for s in 0..n.
std::vector<std::size_t> layer_histogram(const Family& family);

// The default size band [n/2 - n^(2/3), n/2 + n^(2/3)].  Membership is
// decided by integer cube comparisons (s is in iff (2s-n)^3 <= 8n^2 and
// (n-2s)^3 <= 8n^2), never by floating-point powers, so boundary sizes
// land exactly; s = n/2 + n^(2/3) itself is kept (inclusive endpoints).
bool default_band_contains(int n, int size);
int default_band_floor(int n);  // smallest size in the band, clamped at 0
int default_band_ceil(int n);   // largest size in the band, clamped at n

// Custom bands carry real endpoints; a set of size s is kept iff
// lo <= s <= hi.
struct Band {
  double lo;
  double hi;
};

struct TruncateResult {
  Family family;
  std::size_t removed;
};

// Drops members outside the band (default band of n when none given).
// Keeps the surviving sets in their original order.
TruncateResult truncate_to_band(const Family& family,
                                std::optional<Band> band = std::nullopt);

// Subfamilies by size residue: result[r] holds exactly the members with
// |A| = r (mod k), in their original order, so the outputs partition the
// input.
std::vector<Family> partition_by_size_mod(const Family& family, int k);

}  // namespace setfam
