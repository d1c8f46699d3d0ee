#pragma once

#include <variant>

#include "setfam/constraint.hpp"
#include "setfam/kernels/kernels.hpp"

// Internal adapter: run the kernel scan matching a ConstraintSpec.

namespace setfam::detail {

inline void scan_rule(const KernelTable& kt, const ConstraintSpec& rule,
                      SetMask a, const SetMask* bs, std::size_t count,
                      std::uint64_t* out) {
  if (const auto* r = std::get_if<ForbiddenDifference>(&rule)) {
    kt.scan_difference(a, bs, count, r->k, out);
  } else if (const auto* r = std::get_if<ForbiddenRatio>(&rule)) {
    kt.scan_ratio(a, bs, count, r->p, r->q, out);
  } else if (const auto* r = std::get_if<ForbiddenSymmetricDifference>(&rule)) {
    kt.scan_symdiff(a, bs, count, r->d, out);
  } else {
    kt.scan_meet(a, bs, count, std::get<ForbiddenIntersection>(rule).k, out);
  }
}

}  // namespace setfam::detail
