#include "setfam/lym.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace setfam {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kMaxUniverse || k < 0 || k > n)
    fail(Err::PreconditionViolated,
         "binomial(" + std::to_string(n) + ", " + std::to_string(k) +
             ") out of supported range");
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) /
             static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(result);
}

LymSum lym_sum(const Family& family) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;

  cpp_rational total = 0;
  const std::vector<std::size_t> counts = layer_histogram(family);
  for (int s = 0; s <= family.n; ++s) {
    if (counts[s] == 0) continue;
    total += cpp_rational(cpp_int(counts[s]), cpp_int(binomial(family.n, s)));
  }

  LymSum out;
  out.value = total.convert_to<double>();
  const cpp_int num = boost::multiprecision::numerator(total);
  const cpp_int den = boost::multiprecision::denominator(total);
  out.exact = den == 1 ? num.str() : num.str() + "/" + den.str();
  out.cmp_one = total < 1 ? -1 : (total == 1 ? 0 : 1);
  return out;
}

}  // namespace setfam
