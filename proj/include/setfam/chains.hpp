#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setfam/family.hpp"

namespace setfam {

// The I/J split of [n]: I = [1, m] supplies chain prefixes, J = [m+1, n]
// the detached top elements.
struct ChainSplit {
  int n;
  int m;

  int j_count() const { return n - m; }
};

// m = floor(n/2 + n^(2/3)), computed by integer cube comparison.  Requires
// n >= 10; smaller n throws SplitDegenerate.
ChainSplit default_split(int n);

struct PermSample {
  std::vector<int> sigma;  // sigma[i-1] is the image of i
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

// Fisher-Yates shuffle of 1..n driven by the splitmix64 stream keyed on
// (seed, index); identical arguments give identical permutations on every
// platform and thread schedule.
PermSample sample_permutation(int n, std::uint64_t seed, std::uint64_t index);

// One partial chain set C_{i,j} = sigma({1..i}) | {sigma(j)}.
struct ChainSet {
  int i;
  int j;
  SetMask mask;
};

// All |I| * (n - m) partial chains of the permutation, ordered by (j, i).
std::vector<ChainSet> chains_k1(const PermSample& sigma, ChainSplit split);

struct IncidenceStats {
  int sum_x = 0;
  // (i, j) of the first indicator that fired, in (j, i) scan order; the
  // block variant stores (i, S-id).
  std::optional<std::pair<int, int>> first_hit;
  std::map<int, int> hits_by_size;  // chain sets found in the family, by size
};

// First-hit indicators along each chain: X_{i,j} = 1 iff C_{i,j} is in the
// family and no C_{k,j} with k < i is.  sum_x adds them over all (i, j).
IncidenceStats incidence_k1(const FamilyIndex& family, const PermSample& sigma,
                            ChainSplit split);

// Exact telescoped product of the per-step survival probabilities
// (1 - 1/t) for t = a..s-1, which collapses to (a-1)/(s-1); 1 when a = s.
// Requires 2 <= a <= s.
double lower_factor(int s, int a);

struct BoundEstimate {
  std::uint64_t samples = 0;
  double mean = 0.0;
  double std_err = 0.0;
  double analytic_lower = 0.0;
  double analytic_upper = 0.0;
  double L = 0.0;
  ChainSplit split{0, 0};
  int band_floor = 0;
  std::uint64_t seed = 0;
};

// Monte-Carlo estimate of E[sum_x] over independent permutations, with the
// analytic sandwich analytic_lower <= E <= analytic_upper, where
// analytic_upper = |J| * L, L = sum over sizes of |f^(s)|/C(n,s), and
// analytic_lower scales that by the worst lower_factor(s, band_floor) over
// sizes present.  Preconditions: f passes ForbiddenDifference(1), every
// member size lies in [band_floor, m+1], band_floor >= 2.
BoundEstimate estimate_k1(const Family& family, ChainSplit split,
                          int band_floor, std::uint64_t samples,
                          std::uint64_t seed, int threads = 1);

// Block chains C_{i,S} = sigma({1..ik}) | sigma(S) for i = 1..n/(3k),
// where sigma(S) = {sigma(x) : x in S}.  The result holds C_{i,S} at
// index i-1.  Requires n divisible by 3k and S an (n/3)-subset of
// J = [n/3+1, n].
std::vector<SetMask> block_chains(const PermSample& sigma, SetMask s_mask,
                                  int k);

// Monte-Carlo density of hitting families: each sample draws a fresh
// permutation and a uniform S and records whether any C_{i,S} lies in f0.
// The mean estimates P(some C_{i,S} in f0) over uniform (sigma, S).
// Returned as a BoundEstimate with analytic_upper the union bound
// min(1, L), analytic_lower 0, split {n, n/3}, band_floor n/3 + k.
// Preconditions: f0 passes ForbiddenDifference(k); every member size is
// n/3 + ik for some i in 1..n/(3k).
BoundEstimate block_hit_estimate(const Family& f0, int k,
                                 std::uint64_t samples, std::uint64_t seed,
                                 int threads = 1);

// The ceiling the block machinery is compared against carries an unknown
// constant; it is reported as a token plus the computable factor
// (12k^2)^k / n^k, never as a bare number.
struct SymbolicCeiling {
  std::string constant;  // "d_<2k>"
  double factor;         // (12 k^2)^k / n^k
  std::string expr;      // "d_<2k> * (12*k^2)^k / n^k"
};

SymbolicCeiling block_ceiling(int n, int k);

// The k-subsets E of D with D \ E in the family, in increasing mask
// order.  When the family passes ForbiddenDifference(k), the returned
// masks pairwise intersect.
std::vector<SetMask> removable_ksets(SetMask d, const FamilyIndex& family,
                                     int k);

}  // namespace setfam
