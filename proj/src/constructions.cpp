#include "setfam/constructions.hpp"

#include <algorithm>

#include "setfam/errors.hpp"
#include "setfam/rng.hpp"
#include "rule_scan.hpp"

namespace setfam {
namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Residue vectors are encoded with r_1 most significant, so the smallest
// encoded index among the largest classes is the lexicographically
// smallest vector.
std::vector<std::uint32_t> decode_residues(std::uint64_t idx, int n, int k) {
  std::vector<std::uint32_t> out(k);
  for (int d = k - 1; d >= 0; --d) {
    out[d] = static_cast<std::uint32_t>(idx % n);
    idx /= n;
  }
  return out;
}

// Largest residue-vector space the "best" mode will histogram.
constexpr std::uint64_t kResidueSpaceCap = std::uint64_t{1} << 22;

ResidueFamily power_sum_family(int n, int k, const ResidueChoice& choice) {
  const int s = n / 2;

  // pw[d-1][i] = (i mod n)^d mod n, so element n contributes 0
  std::vector<std::vector<std::uint32_t>> pw(
      k, std::vector<std::uint32_t>(n + 1, 0));
  for (int i = 1; i <= n; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i % n);
    std::uint64_t acc = 1;
    for (int d = 0; d < k; ++d) {
      acc = acc * base % n;
      pw[d][i] = static_cast<std::uint32_t>(acc);
    }
  }

  std::uint64_t space = 1;
  for (int d = 0; d < k; ++d) {
    space *= static_cast<std::uint64_t>(n);
    if (space > kResidueSpaceCap && choice.best)
      fail(Err::PreconditionViolated,
           "residue space n^k too large to enumerate for best mode");
  }

  auto encode_of_set = [&](SetMask m) {
    std::uint64_t idx = 0;
    std::vector<std::uint32_t> sums(k, 0);
    while (m) {
      const int e = std::countr_zero(m) + 1;
      m &= m - 1;
      for (int d = 0; d < k; ++d) {
        sums[d] += pw[d][e];
        if (sums[d] >= static_cast<std::uint32_t>(n)) sums[d] -= n;
      }
    }
    for (int d = 0; d < k; ++d) idx = idx * n + sums[d];
    return idx;
  };

  std::uint64_t chosen_idx = 0;
  if (choice.best) {
    std::vector<std::uint64_t> histogram(space, 0);
    for_each_subset_of_size(n, s,
                            [&](SetMask m) { ++histogram[encode_of_set(m)]; });
    std::uint64_t best_count = 0;
    for (std::uint64_t idx = 0; idx < space; ++idx) {
      if (histogram[idx] > best_count) {
        best_count = histogram[idx];
        chosen_idx = idx;
      }
    }
  } else {
    if (static_cast<int>(choice.residues.size()) != k)
      fail(Err::PreconditionViolated,
           "residue vector needs exactly " + std::to_string(k) + " entries");
    for (std::uint32_t r : choice.residues) {
      if (r >= static_cast<std::uint32_t>(n))
        fail(Err::PreconditionViolated,
             "residue " + std::to_string(r) + " not below n");
      chosen_idx = chosen_idx * n + r;
    }
  }

  ResidueFamily out;
  out.family.n = n;
  out.residues = decode_residues(chosen_idx, n, k);
  for_each_subset_of_size(n, s, [&](SetMask m) {
    if (encode_of_set(m) == chosen_idx) out.family.sets.push_back(m);
  });
  return out;
}

}  // namespace

ResidueFamily a_star(int n, const ResidueChoice& choice) {
  if (n < 1) fail(Err::PreconditionViolated, "a_star needs n >= 1");
  require_universe(n);
  return power_sum_family(n, 1, choice);
}

ResidueFamily a_star_k(int n, int k, const ResidueChoice& choice) {
  require_universe(n);
  if (!is_prime(n))
    fail(Err::NotPrime, std::to_string(n) + " is not prime");
  if (k < 1 || k >= n)
    fail(Err::PreconditionViolated, "need 1 <= k < n");
  return power_sum_family(n, k, choice);
}

Family middle_layers(int n, std::uint32_t p, std::uint32_t q) {
  if (n < 1) fail(Err::PreconditionViolated, "middle_layers needs n >= 1");
  require_universe(n);
  forbidden_ratio(p, q);  // parameter validation
  const int gap = static_cast<int>(q - p);
  if (gap < 1) fail(Err::PreconditionViolated, "middle_layers needs q > p");
  if (gap > n + 1)
    fail(Err::PreconditionViolated, "q - p must be at most n + 1");

  const int t = (n - (gap - 1)) / 2;
  Family out;
  out.n = n;
  for (int s = t; s < t + gap; ++s)
    for_each_subset_of_size(n, s, [&](SetMask m) { out.sets.push_back(m); });
  return out;
}

Family greedy_valid_family(int n, const RuleSet& rules, std::uint64_t seed) {
  if (n < 1) fail(Err::PreconditionViolated, "greedy needs n >= 1");
  if (n > 20)
    fail(Err::UniverseTooLarge, "greedy generator capped at n <= 20");
  if (rules.empty())
    fail(Err::PreconditionViolated, "greedy needs at least one rule");

  std::vector<SetMask> candidates(std::size_t{1} << n);
  for (std::size_t i = 0; i < candidates.size(); ++i)
    candidates[i] = static_cast<SetMask>(i);
  SplitMix64 rng = sample_stream(seed, 0);
  shuffle(std::span<SetMask>(candidates), rng);

  const KernelTable& kt = active_kernels();
  std::vector<SetMask> chosen;
  std::vector<std::uint64_t> bits(16);
  for (SetMask cand : candidates) {
    bool conflicted = false;
    // scan the chosen list in blocks so a hit bails out early
    for (std::size_t lo = 0; lo < chosen.size() && !conflicted; lo += 1024) {
      const std::size_t len = std::min<std::size_t>(1024, chosen.size() - lo);
      const std::size_t words = (len + 63) / 64;
      for (const ConstraintSpec& rule : rules) {
        detail::scan_rule(kt, rule, cand, chosen.data() + lo, len,
                          bits.data());
        for (std::size_t w = 0; w < words && !conflicted; ++w)
          if (bits[w]) conflicted = true;
        if (conflicted) break;
      }
    }
    if (!conflicted) chosen.push_back(cand);
  }

  Family out;
  out.n = n;
  out.sets = std::move(chosen);
  return out;
}

Family greedy_valid_family(int n, const ConstraintSpec& rule,
                           std::uint64_t seed) {
  return greedy_valid_family(n, RuleSet{rule}, seed);
}

}  // namespace setfam
