#include "setfam/mask.hpp"

#include <sstream>

namespace setfam {

std::vector<int> elements_of(SetMask m) {
  std::vector<int> out;
  out.reserve(set_size(m));
  while (m) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

SetMask mask_from_elements(std::span<const int> elements, int n) {
  require_universe(n);
  SetMask m = 0;
  for (int e : elements) {
    if (e < 1 || e > n)
      fail(Err::ElementOutOfRange,
           "element " + std::to_string(e) + " outside [1, " +
               std::to_string(n) + "]");
    SetMask bit = element_bit(e);
    if (m & bit)
      fail(Err::DuplicateSet, "element " + std::to_string(e) + " repeated");
    m |= bit;
  }
  return m;
}

std::string format_set(SetMask m) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int e : elements_of(m)) {
    if (!first) out << ',';
    out << e;
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace setfam
