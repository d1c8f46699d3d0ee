#include "setfam/check.hpp"

#include <algorithm>
#include <thread>
#include <utility>
#include <variant>

#include "rule_scan.hpp"

namespace setfam {
namespace {

// Orientation that violates the rule as written, so every reported
// Violation re-checks under its own rule.
Violation orient(const ConstraintSpec& rule, SetMask a, SetMask b) {
  const PairStats st = pair_stats(a, b);
  if (const auto* r = std::get_if<ForbiddenDifference>(&rule)) {
    if (st.diff_ab != static_cast<int>(r->k)) std::swap(a, b);
  } else if (const auto* r = std::get_if<ForbiddenRatio>(&rule)) {
    if (std::uint64_t{r->q} * st.diff_ab != std::uint64_t{r->p} * st.diff_ba)
      std::swap(a, b);
  } else if (a > b) {
    std::swap(a, b);  // symmetric rules: smaller mask first
  }
  return Violation{a, b, rule};
}

struct Layer {
  int size;
  std::vector<SetMask> masks;  // ascending
};

std::vector<Layer> layers_of(const Family& family) {
  std::vector<SetMask> sorted = family.sets;
  std::sort(sorted.begin(), sorted.end(),
            [](SetMask x, SetMask y) {
              return std::make_pair(set_size(x), x) <
                     std::make_pair(set_size(y), y);
            });
  std::vector<Layer> layers;
  for (SetMask m : sorted) {
    if (layers.empty() || layers.back().size != set_size(m))
      layers.push_back(Layer{set_size(m), {}});
    layers.back().masks.push_back(m);
  }
  return layers;
}

// Same-layer scans for difference-flavoured rules go through an exact
// subset-key pass: a violating pair of size-s sets has |A n B| equal to a
// single target value t, so A and B collide on exactly one common
// t-subset.  Enumerate the t-subsets of every member as keys, sort, and
// confirm each colliding pair exactly.  Cost is |layer| * C(s, t) keys,
// so the caller guards with the caps below before choosing this path.
constexpr std::uint64_t kKeysPerSetCap = 4096;
constexpr std::uint64_t kKeysTotalCap = 80'000'000;

// Meet target for a violating same-layer pair, or -1 when the rule is not
// of that shape (ratio rules never are; p = q is handled separately).
int same_layer_meet_target(const ConstraintSpec& rule, int s) {
  if (const auto* r = std::get_if<ForbiddenDifference>(&rule))
    return s - static_cast<int>(r->k);
  if (const auto* r = std::get_if<ForbiddenSymmetricDifference>(&rule)) {
    if (r->d % 2 != 0) return -1;
    return s - static_cast<int>(r->d / 2);
  }
  if (const auto* r = std::get_if<ForbiddenIntersection>(&rule))
    return static_cast<int>(r->k);
  return -1;
}

std::uint64_t subsets_per_set(int s, int t) {
  // C(s, t) with saturation; only compared against the caps
  unsigned __int128 c = 1;
  if (t > s - t) t = s - t;
  for (int i = 1; i <= t; ++i) {
    c = c * static_cast<unsigned>(s - t + i) / static_cast<unsigned>(i);
    if (c > kKeysTotalCap) return kKeysTotalCap + 1;
  }
  return static_cast<std::uint64_t>(c);
}

class Checker {
 public:
  Checker(const Family& family, const RuleSet& rules,
          const CheckOptions& options)
      : family_(family),
        rules_(rules),
        options_(options),
        layers_(layers_of(family)) {}

  CheckResult run() {
    for (const ConstraintSpec& rule : rules_) {
      for (std::size_t la = 0; la < layers_.size() && keep_going(); ++la) {
        for (std::size_t lb = la; lb < layers_.size() && keep_going(); ++lb) {
          const Layer& a = layers_[la];
          const Layer& b = layers_[lb];
          if (!layer_pair_feasible(rule, a.size, b.size, family_.n)) continue;
          if (la == lb)
            check_same_layer(rule, a);
          else
            check_cross_layer(rule, a, b);
        }
      }
      if (!keep_going()) break;
    }
    return std::move(result_);
  }

 private:
  bool keep_going() const {
    return !(options_.mode == CheckMode::FirstViolation && !result_.ok);
  }

  void emit(const ConstraintSpec& rule, SetMask a, SetMask b) {
    result_.ok = false;
    result_.violations.push_back(orient(rule, a, b));
  }

  void check_same_layer(const ConstraintSpec& rule, const Layer& layer) {
    const std::size_t count = layer.masks.size();
    if (count < 2) return;

    if (const auto* r = std::get_if<ForbiddenRatio>(&rule); r && r->p == r->q) {
      // every distinct same-size pair has |A\B| = |B\A|
      for (std::size_t i = 0; i < count && keep_going(); ++i)
        for (std::size_t j = i + 1; j < count && keep_going(); ++j)
          emit(rule, layer.masks[i], layer.masks[j]);
      return;
    }

    const int target = same_layer_meet_target(rule, layer.size);
    if (target >= 1 && target < layer.size) {
      const std::uint64_t per_set = subsets_per_set(layer.size, target);
      if (count >= 512 && per_set <= kKeysPerSetCap &&
          per_set * count <= kKeysTotalCap) {
        check_by_subset_keys(rule, layer, target);
        return;
      }
    }
    scan_pairs_same(rule, layer);
  }

  void check_by_subset_keys(const ConstraintSpec& rule, const Layer& layer,
                            int target) {
    std::vector<std::pair<SetMask, SetMask>> keys;  // (t-subset, member)
    keys.reserve(layer.masks.size() * subsets_per_set(layer.size, target));
    for (SetMask m : layer.masks)
      for_each_ksubset_of(m, target,
                          [&](SetMask sub) { keys.emplace_back(sub, m); });
    std::sort(keys.begin(), keys.end());

    for (std::size_t lo = 0; lo < keys.size() && keep_going();) {
      std::size_t hi = lo + 1;
      while (hi < keys.size() && keys[hi].first == keys[lo].first) ++hi;
      for (std::size_t i = lo; i < hi && keep_going(); ++i) {
        for (std::size_t j = i + 1; j < hi && keep_going(); ++j) {
          const SetMask a = keys[i].second;
          const SetMask b = keys[j].second;
          // collision means |A n B| >= target; equality is the violation,
          // and such pairs share exactly one key, so no duplicates
          if (set_size(a & b) == target) emit(rule, a, b);
        }
      }
      lo = hi;
    }
  }

  void scan_pairs_same(const ConstraintSpec& rule, const Layer& layer) {
    const std::size_t count = layer.masks.size();
    scan_rows(rule, layer.masks, layer.masks, /*upper_triangle=*/true, count);
  }

  void check_cross_layer(const ConstraintSpec& rule, const Layer& a,
                         const Layer& b) {
    scan_rows(rule, a.masks, b.masks, /*upper_triangle=*/false,
              a.masks.size());
  }

  // Kernel path: for each mask in rows, scan the masks of cols (the tail
  // beyond the row index when walking one layer against itself).  Thread
  // chunks partition the row range; each chunk collects violations
  // locally and the merge is in chunk order, so the output is identical
  // for every thread count.
  void scan_rows(const ConstraintSpec& rule, const std::vector<SetMask>& rows,
                 const std::vector<SetMask>& cols, bool upper_triangle,
                 std::size_t row_count) {
    const KernelTable& kt = active_kernels();

    auto scan_range = [&](std::size_t lo, std::size_t hi, bool stop_at_first,
                          std::vector<std::pair<SetMask, SetMask>>& found) {
      std::vector<std::uint64_t> bits((cols.size() + 63) / 64);
      for (std::size_t i = lo; i < hi; ++i) {
        const SetMask a = rows[i];
        const SetMask* base = cols.data();
        std::size_t count = cols.size();
        std::size_t offset = 0;
        if (upper_triangle) {
          offset = i + 1;
          base += offset;
          count = cols.size() - offset;
          if (count == 0) continue;
        }
        detail::scan_rule(kt, rule, a, base, count, bits.data());
        const std::size_t words = (count + 63) / 64;
        for (std::size_t w = 0; w < words; ++w) {
          std::uint64_t word = bits[w];
          while (word) {
            const int bit = std::countr_zero(word);
            word &= word - 1;
            found.emplace_back(a, cols[offset + w * 64 + bit]);
            if (stop_at_first) return;
          }
        }
      }
    };

    const bool first_only = options_.mode == CheckMode::FirstViolation;
    const int threads = first_only ? 1 : std::max(1, options_.threads);
    if (threads == 1 || row_count < 2048) {
      std::vector<std::pair<SetMask, SetMask>> found;
      scan_range(0, row_count, first_only, found);
      for (auto [a, b] : found) {
        emit(rule, a, b);
        if (first_only) return;
      }
      return;
    }

    const std::size_t chunk = (row_count + threads - 1) / threads;
    std::vector<std::vector<std::pair<SetMask, SetMask>>> found(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const std::size_t lo = std::min<std::size_t>(t * chunk, row_count);
      const std::size_t hi = std::min(lo + chunk, row_count);
      pool.emplace_back(
          [&, lo, hi, t] { scan_range(lo, hi, false, found[t]); });
    }
    for (std::thread& th : pool) th.join();
    for (const auto& part : found)
      for (auto [a, b] : part) emit(rule, a, b);
  }

  const Family& family_;
  const RuleSet& rules_;
  CheckOptions options_;
  std::vector<Layer> layers_;
  CheckResult result_;
};

}  // namespace

CheckResult check_family(const Family& family, const RuleSet& rules,
                         const CheckOptions& options) {
  return Checker(family, rules, options).run();
}

CheckResult check_family(const Family& family, const ConstraintSpec& rule,
                         const CheckOptions& options) {
  return check_family(family, RuleSet{rule}, options);
}

}  // namespace setfam
