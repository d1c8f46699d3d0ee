#pragma once

#include <cstddef>
#include <cstdint>

#include "setfam/mask.hpp"

namespace setfam {

// Pairwise-scan kernels: every constraint check reduces to popcounts of
// a&~b, b&~a, a&b, a^b against a run of candidate masks, so those scans
// are the library's hot loop.  The scalar table is the reference; the
// AVX2 table (4 masks per lane group, PSHUFB nibble popcount) must be
// bit-identical and is selected at runtime.
//
// Scan contract: bit t of out[] is set iff the unordered pair
// {a, bs[t]} violates the rule (both orientations of the asymmetric
// rules are folded in).  out holds ceil(count/64) words; tail bits are
// zero.  Callers are responsible for excluding self-pairs.
struct KernelTable {
  const char* name;

  void (*scan_difference)(SetMask a, const SetMask* bs, std::size_t count,
                          std::uint32_t k, std::uint64_t* out);
  void (*scan_ratio)(SetMask a, const SetMask* bs, std::size_t count,
                     std::uint32_t p, std::uint32_t q, std::uint64_t* out);
  void (*scan_symdiff)(SetMask a, const SetMask* bs, std::size_t count,
                       std::uint32_t d, std::uint64_t* out);
  void (*scan_meet)(SetMask a, const SetMask* bs, std::size_t count,
                    std::uint32_t k, std::uint64_t* out);

  std::uint64_t (*popcount_words)(const std::uint64_t* words,
                                  std::size_t count);
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t count);
};

const KernelTable& scalar_kernels();

// Null when the build or the running CPU lacks AVX2.
const KernelTable* avx2_kernels();

// The table scans go through: AVX2 when available, else scalar.  The
// SETFAM_KERNEL environment variable ("scalar" / "avx2") pins the choice
// at first use; set_active_kernels overrides it programmatically and
// throws if the named table is unavailable.
const KernelTable& active_kernels();
void set_active_kernels(const char* name);

}  // namespace setfam
