#include "setfam/constraint.hpp"

#include <cstdint>
#include <numeric>

#include "setfam/errors.hpp"
#include "kernels/kernels_impl.hpp"

namespace setfam {

namespace {

// p and q stay small enough that q*|A\B| fits comfortably in the 32x32
// lane products of the vector kernels.
constexpr std::uint32_t kRatioLimit = 1u << 20;

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

ConstraintSpec forbidden_difference(std::uint32_t k) {
  if (k < 1) fail(Err::ParseError, "diff parameter must be at least 1");
  return ForbiddenDifference{k};
}

ConstraintSpec forbidden_ratio(std::uint32_t p, std::uint32_t q) {
  if (q < 1) fail(Err::ParseError, "ratio denominator must be at least 1");
  if (p > q) fail(Err::ParseError, "ratio requires p <= q");
  if (q >= kRatioLimit) fail(Err::ParseError, "ratio parameter too large");
  if (std::gcd(p, q) != 1)
    fail(Err::ParseError, "ratio requires gcd(p, q) = 1, got " +
                              std::to_string(p) + ":" + std::to_string(q));
  return ForbiddenRatio{p, q};
}

ConstraintSpec forbidden_symmetric_difference(std::uint32_t d) {
  if (d < 1) fail(Err::ParseError, "symdiff parameter must be at least 1");
  return ForbiddenSymmetricDifference{d};
}

ConstraintSpec forbidden_intersection(std::uint32_t k) {
  return ForbiddenIntersection{k};
}

std::string rule_text(const ConstraintSpec& rule) {
  return std::visit(
      overloaded{
          [](const ForbiddenDifference& r) {
            return "diff:" + std::to_string(r.k);
          },
          [](const ForbiddenRatio& r) {
            return "ratio:" + std::to_string(r.p) + ":" + std::to_string(r.q);
          },
          [](const ForbiddenSymmetricDifference& r) {
            return "symdiff:" + std::to_string(r.d);
          },
          [](const ForbiddenIntersection& r) {
            return "meet:" + std::to_string(r.k);
          },
      },
      rule);
}

bool violates(const ConstraintSpec& rule, SetMask a, SetMask b) {
  return std::visit(
      overloaded{
          [&](const ForbiddenDifference& r) {
            return detail::hit_difference(a, b, r.k);
          },
          [&](const ForbiddenRatio& r) {
            return detail::hit_ratio(a, b, r.p, r.q);
          },
          [&](const ForbiddenSymmetricDifference& r) {
            return detail::hit_symdiff(a, b, r.d);
          },
          [&](const ForbiddenIntersection& r) {
            return detail::hit_meet(a, b, r.k);
          },
      },
      rule);
}

bool violates_any(const RuleSet& rules, SetMask a, SetMask b) {
  for (const ConstraintSpec& rule : rules)
    if (violates(rule, a, b)) return true;
  return false;
}

namespace {

// A candidate meet value t realizes a violating pair of distinct sets of
// sizes (sa, sb) iff it is achievable inside [n] and does not force the
// sets to coincide.
bool meet_value_ok(std::int64_t t, int sa, int sb, int n) {
  const std::int64_t lo = std::max<std::int64_t>(0, sa + sb - n);
  const std::int64_t hi = std::min(sa, sb);
  if (t < lo || t > hi) return false;
  return !(t == sa && t == sb);
}

}  // namespace

bool layer_pair_feasible(const ConstraintSpec& rule, int sa, int sb, int n) {
  return std::visit(
      overloaded{
          [&](const ForbiddenDifference& r) {
            const std::int64_t k = r.k;
            return meet_value_ok(sa - k, sa, sb, n) ||
                   meet_value_ok(sb - k, sa, sb, n);
          },
          [&](const ForbiddenRatio& r) {
            const std::int64_t p = r.p, q = r.q;
            if (p == q) {
              // |A\B| = |B\A| needs equal sizes and one shared non-member
              return sa == sb && meet_value_ok(sa - 1, sa, sb, n);
            }
            // q(sa - t) = p(sb - t)  =>  t = (q sa - p sb) / (q - p)
            const std::int64_t num1 = q * sa - p * sb;
            const std::int64_t num2 = q * sb - p * sa;
            const std::int64_t den = q - p;
            if (num1 % den == 0 && meet_value_ok(num1 / den, sa, sb, n))
              return true;
            return num2 % den == 0 && meet_value_ok(num2 / den, sa, sb, n);
          },
          [&](const ForbiddenSymmetricDifference& r) {
            const std::int64_t d = r.d;
            if ((sa + sb - d) % 2 != 0) return false;
            return meet_value_ok((sa + sb - d) / 2, sa, sb, n);
          },
          [&](const ForbiddenIntersection& r) {
            return meet_value_ok(r.k, sa, sb, n);
          },
      },
      rule);
}

}  // namespace setfam
