#include "setfam/kernels/kernels.hpp"

#include "kernels_impl.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

namespace setfam {
namespace {

// Positional popcount of four 64-bit lanes: PSHUFB nibble lookup, then
// SAD against zero collapses the sixteen byte counts of each lane.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i nib = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, nib);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), nib);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                      _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

// Lane-equality mask as 4 result bits.
inline std::uint64_t eq_bits(__m256i x, __m256i y) {
  const __m256i eq = _mm256_cmpeq_epi64(x, y);
  return static_cast<std::uint32_t>(
      _mm256_movemask_pd(_mm256_castsi256_pd(eq)));
}

// Shared scan skeleton: 4 candidate masks per vector group, result bits
// packed into 64-bit output words, stragglers handled by the scalar
// predicate so the bitmaps stay bit-identical to the reference kernels.
template <class Group4, class Tail>
void scan_blocks(const SetMask* bs, std::size_t count, std::uint64_t* out,
                 Group4 group4, Tail tail) {
  const std::size_t words = (count + 63) / 64;
  for (std::size_t w = 0; w < words; ++w) {
    const std::size_t base = w * 64;
    const std::size_t limit = count - base < 64 ? count - base : 64;
    std::uint64_t word = 0;
    std::size_t t = 0;
    for (; t + 4 <= limit; t += 4) word |= group4(bs + base + t) << t;
    for (; t < limit; ++t)
      word |= static_cast<std::uint64_t>(tail(bs[base + t])) << t;
    out[w] = word;
  }
}

void scan_difference(SetMask a, const SetMask* bs, std::size_t count,
                     std::uint32_t k, std::uint64_t* out) {
  const __m256i va = _mm256_set1_epi64x(static_cast<long long>(a));
  const __m256i vk = _mm256_set1_epi64x(static_cast<long long>(k));
  scan_blocks(
      bs, count, out,
      [=](const SetMask* p) {
        const __m256i vb =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
        const __m256i dab = popcount_epi64(_mm256_andnot_si256(vb, va));
        const __m256i dba = popcount_epi64(_mm256_andnot_si256(va, vb));
        return eq_bits(dab, vk) | eq_bits(dba, vk);
      },
      [=](SetMask b) { return detail::hit_difference(a, b, k); });
}

void scan_ratio(SetMask a, const SetMask* bs, std::size_t count,
                std::uint32_t p, std::uint32_t q, std::uint64_t* out) {
  const __m256i va = _mm256_set1_epi64x(static_cast<long long>(a));
  const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(p));
  const __m256i vq = _mm256_set1_epi64x(static_cast<long long>(q));
  scan_blocks(
      bs, count, out,
      [=](const SetMask* ptr) {
        const __m256i vb =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ptr));
        const __m256i dab = popcount_epi64(_mm256_andnot_si256(vb, va));
        const __m256i dba = popcount_epi64(_mm256_andnot_si256(va, vb));
        // counts < 2^6 and p, q < 2^20, so the 32x32 products are exact
        const __m256i qdab = _mm256_mul_epu32(dab, vq);
        const __m256i pdba = _mm256_mul_epu32(dba, vp);
        const __m256i qdba = _mm256_mul_epu32(dba, vq);
        const __m256i pdab = _mm256_mul_epu32(dab, vp);
        return eq_bits(qdab, pdba) | eq_bits(qdba, pdab);
      },
      [=](SetMask b) { return detail::hit_ratio(a, b, p, q); });
}

void scan_symdiff(SetMask a, const SetMask* bs, std::size_t count,
                  std::uint32_t d, std::uint64_t* out) {
  const __m256i va = _mm256_set1_epi64x(static_cast<long long>(a));
  const __m256i vd = _mm256_set1_epi64x(static_cast<long long>(d));
  scan_blocks(
      bs, count, out,
      [=](const SetMask* p) {
        const __m256i vb =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
        return eq_bits(popcount_epi64(_mm256_xor_si256(va, vb)), vd);
      },
      [=](SetMask b) { return detail::hit_symdiff(a, b, d); });
}

void scan_meet(SetMask a, const SetMask* bs, std::size_t count,
               std::uint32_t k, std::uint64_t* out) {
  const __m256i va = _mm256_set1_epi64x(static_cast<long long>(a));
  const __m256i vk = _mm256_set1_epi64x(static_cast<long long>(k));
  scan_blocks(
      bs, count, out,
      [=](const SetMask* p) {
        const __m256i vb =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
        return eq_bits(popcount_epi64(_mm256_and_si256(va, vb)), vk);
      },
      [=](SetMask b) { return detail::hit_meet(a, b, k); });
}

inline std::uint64_t hsum_epi64(__m256i v) {
  const __m128i lo = _mm256_castsi256_si128(v);
  const __m128i hi = _mm256_extracti128_si256(v, 1);
  const __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<std::uint64_t>(_mm_extract_epi64(s, 0)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

std::uint64_t popcount_words(const std::uint64_t* words, std::size_t count) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(v));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < count; ++i) total += std::popcount(words[i]);
  return total;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t count) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(va, vb)));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < count; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{
      "avx2",    scan_difference, scan_ratio,   scan_symdiff,
      scan_meet, popcount_words,  and_popcount,
  };
  return __builtin_cpu_supports("avx2") ? &table : nullptr;
}

}  // namespace setfam

#else  // non-x86 build or AVX2 not enabled for this translation unit

namespace setfam {

const KernelTable* avx2_kernels() { return nullptr; }

}  // namespace setfam

#endif
