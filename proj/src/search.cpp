#include "setfam/search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "rule_scan.hpp"
#include "setfam/check.hpp"
#include "setfam/kernels/kernels.hpp"

namespace setfam {
namespace {

using Clock = std::chrono::steady_clock;

Family family_of_vertices(int n, const std::vector<SetMask>& masks) {
  std::vector<SetMask> sorted = masks;
  std::sort(sorted.begin(), sorted.end());
  Family f;
  f.n = n;
  f.sets = std::move(sorted);
  return f;
}

SearchResult exhaustive_over(int n, const std::vector<SetMask>& verts,
                             const RuleSet& rules) {
  const auto start = Clock::now();
  const std::size_t v = verts.size();

  std::vector<std::uint32_t> adj(v, 0);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j)
      if (i != j && violates_any(rules, verts[i], verts[j]))
        adj[i] |= std::uint32_t{1} << j;

  SearchResult result;
  std::uint32_t best_subset = 0;
  int best = -1;
  const std::uint32_t limit =
      v >= 32 ? ~std::uint32_t{0}
              : static_cast<std::uint32_t>((std::uint64_t{1} << v) - 1);
  std::uint32_t subset = 0;
  while (true) {
    bool independent = true;
    for (std::uint32_t rest = subset; rest && independent;) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      if (adj[i] & subset) independent = false;
    }
    if (independent && std::popcount(subset) > best) {
      best = std::popcount(subset);
      best_subset = subset;
    }
    if (subset == limit) break;
    ++subset;
  }

  std::vector<SetMask> chosen;
  for (std::uint32_t rest = best_subset; rest;) {
    const int i = std::countr_zero(rest);
    rest &= rest - 1;
    chosen.push_back(verts[i]);
  }
  result.optimum = static_cast<std::size_t>(best);
  result.witness = family_of_vertices(n, chosen);
  result.nodes_explored = static_cast<std::uint64_t>(limit) + 1;
  result.proven_optimal = true;
  result.wall_time = Clock::now() - start;
  return result;
}

// Branch and bound in the style of the Tomita MCS solvers, on the
// independent-set side: the bound is a greedy clique cover of the
// candidate set (any independent set picks at most one vertex per
// clique), recomputed at every node.  Cover classes are built only while
// they can still prune (up to gap+1 of them); vertices left over get a
// sentinel color that never prunes and is always branched on, which keeps
// the bound sound no matter how the incumbent moves.
class MisSolver {
 public:
  MisSolver(ConflictGraph& graph, std::uint64_t budget)
      : graph_(graph),
        v_(graph.vertex_count()),
        words_(graph.row_words()),
        budget_(budget) {
    // static order: descending degree, ties by mask value
    graph_.materialize();
    std::vector<std::uint64_t> degree(v_);
    for (std::size_t i = 0; i < v_; ++i)
      degree[i] = active_degree(graph_.row(i));
    std::vector<std::uint32_t> order(v_);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t x, std::uint32_t y) {
                if (degree[x] != degree[y]) return degree[x] > degree[y];
                return graph_.vertices()[x] < graph_.vertices()[y];
              });

    // permuted copies of the rows so position == search order
    mask_of_.resize(v_);
    std::vector<std::uint32_t> pos(v_);
    for (std::size_t p = 0; p < v_; ++p) {
      mask_of_[p] = graph_.vertices()[order[p]];
      pos[order[p]] = static_cast<std::uint32_t>(p);
    }
    adj_.assign(v_ * words_, 0);
    for (std::size_t p = 0; p < v_; ++p) {
      const std::uint64_t* row = graph_.row(order[p]);
      std::uint64_t* out = adj_.data() + p * words_;
      for (std::size_t j = 0; j < v_; ++j)
        if ((row[j >> 6] >> (j & 63)) & 1)
          out[pos[j] >> 6] |= std::uint64_t{1} << (pos[j] & 63);
    }
  }

  void seed_incumbent(const std::vector<std::uint32_t>& positions) {
    best_ = positions.size();
    best_set_ = positions;
  }

  void run() {
    std::vector<std::uint64_t> all(words_, 0);
    for (std::size_t i = 0; i < v_; ++i)
      all[i >> 6] |= std::uint64_t{1} << (i & 63);
    if (best_ == 0 && v_ > 0) seed_greedy(all);
    // sized once so references stay valid across the recursion; the inner
    // vectors are only given storage at depths actually reached
    cand_.assign(v_ + 2, {});
    order_.assign(v_ + 1, {});
    colors_.assign(v_ + 1, {});
    remaining_.assign(v_ + 1, {});
    sweep_.assign(v_ + 1, {});
    expand(0, all, v_);
  }

  std::size_t best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }
  std::vector<SetMask> best_masks() const {
    std::vector<SetMask> out;
    out.reserve(best_set_.size());
    for (std::uint32_t p : best_set_) out.push_back(mask_of_[p]);
    return out;
  }

  std::uint32_t position_of(SetMask m) const {
    for (std::size_t p = 0; p < v_; ++p)
      if (mask_of_[p] == m) return static_cast<std::uint32_t>(p);
    fail(Err::Internal, "mask not in vertex set");
  }

 private:
  // colors above this value never satisfy the prune test
  static constexpr std::uint32_t kInfColor = 1u << 30;

  std::uint64_t active_degree(const std::uint64_t* row) const {
    std::uint64_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(row[w]);
    return d;
  }

  const std::uint64_t* row_at(std::uint32_t p) const {
    return adj_.data() + static_cast<std::size_t>(p) * words_;
  }

  void record_if_better() {
    if (chosen_.size() > best_) {
      best_ = chosen_.size();
      best_set_ = chosen_;
    }
  }

  // Maximal independent set grown from the low-degree end of the static
  // order, so the search starts with a live incumbent.
  void seed_greedy(const std::vector<std::uint64_t>& all) {
    std::vector<std::uint64_t> avail = all;
    std::vector<std::uint32_t> picked;
    for (std::size_t p = v_; p-- > 0;) {
      if (!((avail[p >> 6] >> (p & 63)) & 1)) continue;
      picked.push_back(static_cast<std::uint32_t>(p));
      const std::uint64_t* row = row_at(static_cast<std::uint32_t>(p));
      for (std::size_t w = 0; w < words_; ++w) avail[w] &= ~row[w];
      avail[p >> 6] &= ~(std::uint64_t{1} << (p & 63));
    }
    best_ = picked.size();
    best_set_ = std::move(picked);
  }

  void expand(int depth, std::vector<std::uint64_t>& cand, std::size_t count) {
    if (nodes_ >= budget_) {
      exhausted_ = true;
      return;
    }
    ++nodes_;
    record_if_better();
    if (count == 0) return;

    const std::size_t gap = best_ - chosen_.size();  // best_ >= chosen_ here
    if (count <= gap) return;

    // Clique cover by repeated sweeps: each class seeds on the lowest
    // remaining candidate and keeps extending inside the common
    // neighborhood, so classes are cliques by construction.  order ends
    // up grouped by color, sentinel-colored leftovers last.  Colors live
    // in a per-depth array parallel to order: deeper calls recolor the
    // shared vertices, so a per-vertex map would go stale by the time
    // the branch loop below reads it.
    auto& order = order_[depth];
    auto& colors = colors_[depth];
    auto& remaining = remaining_[depth];
    auto& sweep = sweep_[depth];
    order.clear();
    colors.clear();
    if (remaining.size() != words_) remaining.assign(words_, 0);
    if (sweep.size() != words_) sweep.assign(words_, 0);
    std::copy(cand.begin(), cand.end(), remaining.begin());

    const std::uint32_t cap = static_cast<std::uint32_t>(gap) + 1;
    std::size_t left = count;
    for (std::uint32_t color = 1; color <= cap && left > 0; ++color) {
      std::copy(remaining.begin(), remaining.end(), sweep.begin());
      std::size_t w = 0;
      while (true) {
        while (w < words_ && sweep[w] == 0) ++w;
        if (w == words_) break;
        const std::uint32_t p =
            static_cast<std::uint32_t>(w * 64 + std::countr_zero(sweep[w]));
        order.push_back(p);
        colors.push_back(color);
        --left;
        remaining[p >> 6] &= ~(std::uint64_t{1} << (p & 63));
        sweep[p >> 6] &= ~(std::uint64_t{1} << (p & 63));
        const std::uint64_t* row = row_at(p);
        for (std::size_t k = w; k < words_; ++k) sweep[k] &= row[k];
      }
    }
    for (std::size_t w = 0; w < words_ && left > 0; ++w) {
      std::uint64_t word = remaining[w];
      while (word) {
        const std::uint32_t p =
            static_cast<std::uint32_t>(w * 64 + std::countr_zero(word));
        word &= word - 1;
        order.push_back(p);
        colors.push_back(kInfColor);
        --left;
      }
    }

    auto& child = cand_[depth + 1];
    if (child.size() != words_) child.assign(words_, 0);

    for (std::size_t at = order.size(); at-- > 0;) {
      const std::uint32_t p = order[at];
      if (chosen_.size() + colors[at] <= best_) return;

      const std::uint64_t* row = row_at(p);
      std::size_t child_count = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        child[w] = cand[w] & ~row[w];
        child_count += std::popcount(child[w]);
      }
      child[p >> 6] &= ~(std::uint64_t{1} << (p & 63));
      --child_count;

      chosen_.push_back(p);
      expand(depth + 1, child, child_count);
      chosen_.pop_back();
      if (exhausted_) return;

      cand[p >> 6] &= ~(std::uint64_t{1} << (p & 63));
    }
  }

  ConflictGraph& graph_;
  std::size_t v_;
  std::size_t words_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> adj_;
  std::vector<SetMask> mask_of_;
  std::vector<std::vector<std::uint64_t>> cand_;
  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<std::vector<std::uint32_t>> colors_;
  std::vector<std::vector<std::uint64_t>> remaining_;
  std::vector<std::vector<std::uint64_t>> sweep_;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::uint32_t> best_set_;
  std::size_t best_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

// Above the dense-row cap there is no hope of closing the search; fall
// back to a deterministic greedy incumbent and report it unproven.
SearchResult greedy_fallback(ConflictGraph& graph,
                             const SearchOptions& options) {
  const auto start = Clock::now();
  const KernelTable& kt = active_kernels();
  const std::vector<SetMask>& verts = graph.vertices();
  std::vector<SetMask> chosen;
  std::vector<std::uint64_t> hits;
  for (SetMask v : verts) {
    const std::size_t words = (chosen.size() + 63) / 64;
    if (hits.size() < words) hits.resize(words);
    bool ok = true;
    for (const ConstraintSpec& rule : graph.rules()) {
      detail::scan_rule(kt, rule, v, chosen.data(), chosen.size(),
                        hits.data());
      for (std::size_t w = 0; w < words && ok; ++w)
        if (hits[w]) ok = false;
      if (!ok) break;
    }
    if (ok) chosen.push_back(v);
  }
  if (options.warm_start && options.warm_start->sets.size() > chosen.size())
    chosen = options.warm_start->sets;

  SearchResult result;
  result.optimum = chosen.size();
  result.witness = family_of_vertices(graph.n(), chosen);
  result.nodes_explored = verts.size();
  result.proven_optimal = chosen.size() == verts.size();
  result.wall_time = Clock::now() - start;
  return result;
}

void validate_warm_start(const ConflictGraph& graph, const Family& warm) {
  if (warm.n != graph.n())
    fail(Err::PreconditionViolated, "warm start universe mismatch");
  const std::vector<SetMask>& verts = graph.vertices();
  for (SetMask m : warm.sets)
    if (!std::binary_search(verts.begin(), verts.end(), m))
      fail(Err::PreconditionViolated,
           "warm start set " + format_set(m) + " not a vertex");
  if (!check_family(warm, graph.rules(),
                    CheckOptions{CheckMode::FirstViolation, 1})
           .ok)
    fail(Err::PreconditionViolated, "warm start family violates the rules");
}

}  // namespace

SearchResult max_family_exhaustive(int n, const RuleSet& rules) {
  if (n < 1 || n > 4)
    fail(Err::UniverseTooLarge,
         "exhaustive oracle iterates all subfamilies; needs n <= 4");
  if (rules.empty())
    fail(Err::PreconditionViolated, "need at least one rule");
  std::vector<SetMask> verts(std::size_t{1} << n);
  for (std::size_t i = 0; i < verts.size(); ++i)
    verts[i] = static_cast<SetMask>(i);
  return exhaustive_over(n, verts, rules);
}

SearchResult max_family_exhaustive(int n, const ConstraintSpec& rule) {
  return max_family_exhaustive(n, RuleSet{rule});
}

SearchResult max_independent_set(ConflictGraph& graph,
                                 const SearchOptions& options) {
  if (graph.vertex_count() > ConflictGraph::kVertexCap)
    fail(Err::UniverseTooLarge, "vertex count above 2^20");
  if (options.warm_start) validate_warm_start(graph, *options.warm_start);

  if (graph.vertex_count() > ConflictGraph::kDenseVertexCap)
    return greedy_fallback(graph, options);

  const auto start = Clock::now();
  MisSolver solver(graph, options.node_budget);
  if (options.warm_start) {
    std::vector<std::uint32_t> seed;
    seed.reserve(options.warm_start->sets.size());
    for (SetMask m : options.warm_start->sets)
      seed.push_back(solver.position_of(m));
    solver.seed_incumbent(seed);
  }
  solver.run();

  SearchResult result;
  result.optimum = solver.best();
  result.witness = family_of_vertices(graph.n(), solver.best_masks());
  result.nodes_explored = solver.nodes();
  result.proven_optimal = !solver.exhausted();
  result.wall_time = Clock::now() - start;
  return result;
}

SearchResult max_family(int n, const RuleSet& rules,
                        std::optional<LayerRange> layers,
                        const SearchOptions& options) {
  ConflictGraph graph = build_conflict_graph(n, rules, layers);
  SearchResult result = max_independent_set(graph, options);

  if (n <= 4 && result.proven_optimal) {
    SearchResult oracle = layers
                              ? exhaustive_over(n, graph.vertices(), rules)
                              : max_family_exhaustive(n, rules);
    if (oracle.optimum != result.optimum)
      fail(Err::Internal,
           "branch-and-bound optimum " + std::to_string(result.optimum) +
               " disagrees with the exhaustive oracle " +
               std::to_string(oracle.optimum));
  }
  return result;
}

SearchResult max_family(int n, const ConstraintSpec& rule,
                        std::optional<LayerRange> layers,
                        const SearchOptions& options) {
  return max_family(n, RuleSet{rule}, layers, options);
}

}  // namespace setfam
