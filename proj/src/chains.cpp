#include "setfam/chains.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "setfam/check.hpp"
#include "setfam/lym.hpp"
#include "setfam/rng.hpp"

namespace setfam {

ChainSplit default_split(int n) {
  if (n <= 9)
    fail(Err::SplitDegenerate,
         "default split needs n >= 10, got " + std::to_string(n));
  require_universe(n);
  // largest m with (2m - n)^3 <= 8 n^2, i.e. m <= n/2 + n^(2/3)
  int m = n / 2;
  while (true) {
    const std::int64_t d = 2 * static_cast<std::int64_t>(m + 1) - n;
    if (d > 0 && d * d * d > std::int64_t{8} * n * n) break;
    ++m;
  }
  if (m > n - 1) fail(Err::Internal, "split overran the universe");
  return ChainSplit{n, m};
}

PermSample sample_permutation(int n, std::uint64_t seed, std::uint64_t index) {
  if (n < 1) fail(Err::PreconditionViolated, "permutation needs n >= 1");
  PermSample out;
  out.seed = seed;
  out.index = index;
  out.sigma.resize(n);
  for (int i = 0; i < n; ++i) out.sigma[i] = i + 1;
  SplitMix64 rng = sample_stream(seed, index);
  shuffle(std::span<int>(out.sigma), rng);
  return out;
}

namespace {

void require_split(const PermSample& sigma, ChainSplit split) {
  const int n = static_cast<int>(sigma.sigma.size());
  if (split.n != n || split.m < 1 || split.m > n - 1)
    fail(Err::PreconditionViolated, "split does not match the permutation");
}

}  // namespace

std::vector<ChainSet> chains_k1(const PermSample& sigma, ChainSplit split) {
  require_split(sigma, split);
  const int n = split.n;
  const int m = split.m;

  std::vector<SetMask> prefix(m + 1, 0);
  for (int i = 1; i <= m; ++i)
    prefix[i] = prefix[i - 1] | element_bit(sigma.sigma[i - 1]);

  std::vector<ChainSet> out;
  out.reserve(static_cast<std::size_t>(m) * (n - m));
  for (int j = m + 1; j <= n; ++j) {
    const SetMask top = element_bit(sigma.sigma[j - 1]);
    for (int i = 1; i <= m; ++i)
      out.push_back(ChainSet{i, j, prefix[i] | top});
  }
  return out;
}

IncidenceStats incidence_k1(const FamilyIndex& family, const PermSample& sigma,
                            ChainSplit split) {
  require_split(sigma, split);
  const int n = split.n;
  const int m = split.m;

  IncidenceStats stats;
  SetMask prefix = 0;
  std::vector<SetMask> prefixes(m + 1, 0);
  for (int i = 1; i <= m; ++i) {
    prefix |= element_bit(sigma.sigma[i - 1]);
    prefixes[i] = prefix;
  }

  for (int j = m + 1; j <= n; ++j) {
    const SetMask top = element_bit(sigma.sigma[j - 1]);
    bool hit_this_chain = false;
    for (int i = 1; i <= m; ++i) {
      if (!family.contains(prefixes[i] | top)) continue;
      ++stats.hits_by_size[i + 1];
      if (!hit_this_chain) {
        hit_this_chain = true;
        ++stats.sum_x;
        if (!stats.first_hit) stats.first_hit = std::make_pair(i, j);
      }
    }
  }
  return stats;
}

double lower_factor(int s, int a) {
  if (a < 2 || a > s)
    fail(Err::BadBand, "lower factor needs 2 <= a <= s, got a=" +
                           std::to_string(a) + " s=" + std::to_string(s));
  if (a == s) return 1.0;
  return static_cast<double>(a - 1) / static_cast<double>(s - 1);
}

namespace {

// Shared Monte-Carlo scaffolding: runs `sampler` for indices 0..samples-1
// on `threads` workers, each returning a small integer, and reduces to
// (sum, sum of squares) exactly.  Per-chunk integer partials merge in
// chunk order, so the reduction is identical for every thread count.
struct MomentSums {
  std::uint64_t sum = 0;
  std::uint64_t sum2 = 0;
};

template <class Sampler>
MomentSums run_samples(std::uint64_t samples, int threads, Sampler sampler) {
  threads = std::max(1, threads);
  const std::uint64_t chunk = (samples + threads - 1) / threads;

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    MomentSums part;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const std::uint64_t x = sampler(idx);
      part.sum += x;
      part.sum2 += x * x;
    }
    return part;
  };

  if (threads == 1 || samples < 2048) return run_range(0, samples);

  std::vector<MomentSums> parts(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const std::uint64_t lo = std::min<std::uint64_t>(t * chunk, samples);
    const std::uint64_t hi = std::min(lo + chunk, samples);
    pool.emplace_back([&, lo, hi, t] { parts[t] = run_range(lo, hi); });
  }
  for (std::thread& th : pool) th.join();
  MomentSums total;
  for (const MomentSums& p : parts) {
    total.sum += p.sum;
    total.sum2 += p.sum2;
  }
  return total;
}

void fill_moments(BoundEstimate& est, const MomentSums& sums) {
  if (est.samples == 0) return;
  const double n = static_cast<double>(est.samples);
  est.mean = static_cast<double>(sums.sum) / n;
  if (est.samples > 1) {
    const double var =
        (static_cast<double>(sums.sum2) - n * est.mean * est.mean) / (n - 1);
    est.std_err = std::sqrt(std::max(0.0, var) / n);
  }
}

}  // namespace

BoundEstimate estimate_k1(const Family& family, ChainSplit split,
                          int band_floor, std::uint64_t samples,
                          std::uint64_t seed, int threads) {
  if (split.n != family.n || split.m < 1 || split.m > split.n - 1)
    fail(Err::PreconditionViolated, "split does not match the family");
  if (band_floor < 2)
    fail(Err::BadBand, "band floor must be at least 2");
  for (SetMask m : family.sets) {
    const int s = set_size(m);
    if (s < band_floor || s > split.m + 1)
      fail(Err::FamilyOutsideBand,
           "set " + format_set(m) + " of size " + std::to_string(s) +
               " outside [" + std::to_string(band_floor) + ", " +
               std::to_string(split.m + 1) + "]");
  }
  if (!check_family(family, forbidden_difference(1),
                    CheckOptions{CheckMode::FirstViolation, threads})
           .ok)
    fail(Err::PreconditionViolated,
         "family has a pair at difference 1; the chain identities need a "
         "clean family");

  BoundEstimate est;
  est.samples = samples;
  est.split = split;
  est.band_floor = band_floor;
  est.seed = seed;

  if (!family.sets.empty()) {
    est.L = lym_sum(family).value;
    est.analytic_upper = static_cast<double>(split.j_count()) * est.L;
    double min_factor = 1.0;
    const std::vector<std::size_t> hist = layer_histogram(family);
    for (int s = 0; s <= family.n; ++s)
      if (hist[s] > 0)
        min_factor = std::min(min_factor, lower_factor(s, band_floor));
    est.analytic_lower = min_factor * est.analytic_upper;
  }

  const FamilyIndex index(family);
  const MomentSums sums = run_samples(samples, threads, [&](std::uint64_t i) {
    const PermSample sigma = sample_permutation(family.n, seed, i);
    return static_cast<std::uint64_t>(incidence_k1(index, sigma, split).sum_x);
  });
  fill_moments(est, sums);
  return est;
}

namespace {

struct BlockShape {
  int n;
  int i_max;   // n / (3k)
  int third;   // n / 3
};

BlockShape require_block_shape(int n, int k) {
  if (k < 1) fail(Err::BadBlockStructure, "block size k must be at least 1");
  if (n < 3 || n % (3 * k) != 0)
    fail(Err::BadBlockStructure,
         "n = " + std::to_string(n) + " is not a positive multiple of 3k = " +
             std::to_string(3 * k));
  return BlockShape{n, n / (3 * k), n / 3};
}

}  // namespace

std::vector<SetMask> block_chains(const PermSample& sigma, SetMask s_mask,
                                  int k) {
  const int n = static_cast<int>(sigma.sigma.size());
  const BlockShape shape = require_block_shape(n, k);

  const SetMask j_mask =
      universe_mask(n) & ~universe_mask(shape.third);  // [n/3 + 1, n]
  if ((s_mask & ~j_mask) != 0 || set_size(s_mask) != shape.third)
    fail(Err::BadBlockStructure,
         "S must be an (n/3)-subset of [n/3 + 1, n], got " +
             format_set(s_mask));

  SetMask sigma_s = 0;
  for (int x : elements_of(s_mask)) sigma_s |= element_bit(sigma.sigma[x - 1]);

  std::vector<SetMask> out;
  out.reserve(shape.i_max);
  SetMask prefix = 0;
  for (int i = 1; i <= shape.i_max; ++i) {
    for (int x = (i - 1) * k + 1; x <= i * k; ++x)
      prefix |= element_bit(sigma.sigma[x - 1]);
    out.push_back(prefix | sigma_s);
  }
  return out;
}

BoundEstimate block_hit_estimate(const Family& f0, int k,
                                 std::uint64_t samples, std::uint64_t seed,
                                 int threads) {
  const BlockShape shape = require_block_shape(f0.n, k);

  for (SetMask m : f0.sets) {
    const int s = set_size(m);
    const int over = s - shape.third;
    if (over < k || over > shape.third || over % k != 0)
      fail(Err::PreconditionViolated,
           "set " + format_set(m) + " has size " + std::to_string(s) +
               ", not of the reachable form n/3 + i*k");
  }
  if (!check_family(f0, forbidden_difference(static_cast<std::uint32_t>(k)),
                    CheckOptions{CheckMode::FirstViolation, threads})
           .ok)
    fail(Err::PreconditionViolated,
         "family has a pair at difference " + std::to_string(k));

  BoundEstimate est;
  est.samples = samples;
  est.split = ChainSplit{f0.n, shape.third};
  est.band_floor = shape.third + k;
  est.seed = seed;
  if (!f0.sets.empty()) {
    est.L = lym_sum(f0).value;
    est.analytic_upper = std::min(1.0, est.L);  // union bound over the i's
    est.analytic_lower = 0.0;
  }

  const FamilyIndex index(f0);
  const int n = f0.n;
  std::vector<int> j_elems;
  for (int e = shape.third + 1; e <= n; ++e) j_elems.push_back(e);

  const MomentSums sums = run_samples(samples, threads, [&](std::uint64_t i) {
    SplitMix64 rng = sample_stream(seed, i);
    PermSample sigma;
    sigma.seed = seed;
    sigma.index = i;
    sigma.sigma.resize(n);
    for (int e = 0; e < n; ++e) sigma.sigma[e] = e + 1;
    shuffle(std::span<int>(sigma.sigma), rng);

    // uniform (n/3)-subset of J from the same per-sample stream
    std::vector<int> pool = j_elems;
    SetMask s_mask = 0;
    for (int pick = 0; pick < shape.third; ++pick) {
      const std::size_t at =
          pick + rng.below(static_cast<std::uint64_t>(pool.size() - pick));
      std::swap(pool[pick], pool[at]);
      s_mask |= element_bit(pool[pick]);
    }

    for (SetMask chain : block_chains(sigma, s_mask, k))
      if (index.contains(chain)) return std::uint64_t{1};
    return std::uint64_t{0};
  });
  fill_moments(est, sums);
  return est;
}

SymbolicCeiling block_ceiling(int n, int k) {
  require_block_shape(n, k);
  SymbolicCeiling out;
  out.constant = "d_" + std::to_string(2 * k);
  out.factor = std::pow(12.0 * k * k, k) / std::pow(static_cast<double>(n), k);
  out.expr = out.constant + " * (12*" + std::to_string(k) + "^2)^" +
             std::to_string(k) + " / " + std::to_string(n) + "^" +
             std::to_string(k);
  return out;
}

std::vector<SetMask> removable_ksets(SetMask d, const FamilyIndex& family,
                                     int k) {
  if (k < 0 || set_size(d) < k)
    fail(Err::PreconditionViolated, "need |D| >= k >= 0");
  std::vector<SetMask> out;
  for_each_ksubset_of(d, k, [&](SetMask e) {
    if (family.contains(d & ~e)) out.push_back(e);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace setfam
