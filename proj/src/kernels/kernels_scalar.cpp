#include "setfam/kernels/kernels.hpp"

#include "kernels_impl.hpp"

namespace setfam {
namespace {

template <class Pred>
void scan_with(const SetMask* bs, std::size_t count, std::uint64_t* out,
               Pred pred) {
  const std::size_t words = (count + 63) / 64;
  for (std::size_t w = 0; w < words; ++w) {
    const std::size_t base = w * 64;
    const std::size_t limit = count - base < 64 ? count - base : 64;
    std::uint64_t word = 0;
    for (std::size_t t = 0; t < limit; ++t)
      word |= static_cast<std::uint64_t>(pred(bs[base + t])) << t;
    out[w] = word;
  }
}

void scan_difference(SetMask a, const SetMask* bs, std::size_t count,
                     std::uint32_t k, std::uint64_t* out) {
  scan_with(bs, count, out,
            [=](SetMask b) { return detail::hit_difference(a, b, k); });
}

void scan_ratio(SetMask a, const SetMask* bs, std::size_t count,
                std::uint32_t p, std::uint32_t q, std::uint64_t* out) {
  scan_with(bs, count, out,
            [=](SetMask b) { return detail::hit_ratio(a, b, p, q); });
}

void scan_symdiff(SetMask a, const SetMask* bs, std::size_t count,
                  std::uint32_t d, std::uint64_t* out) {
  scan_with(bs, count, out,
            [=](SetMask b) { return detail::hit_symdiff(a, b, d); });
}

void scan_meet(SetMask a, const SetMask* bs, std::size_t count,
               std::uint32_t k, std::uint64_t* out) {
  scan_with(bs, count, out,
            [=](SetMask b) { return detail::hit_meet(a, b, k); });
}

std::uint64_t popcount_words(const std::uint64_t* words, std::size_t count) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += std::popcount(words[i]);
  return total;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t count) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",   scan_difference, scan_ratio,     scan_symdiff,
      scan_meet,  popcount_words,  and_popcount,
  };
  return table;
}

}  // namespace setfam
