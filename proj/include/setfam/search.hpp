#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "setfam/conflict_graph.hpp"
#include "setfam/constraint.hpp"
#include "setfam/family.hpp"

namespace setfam {

struct SearchResult {
  std::size_t optimum = 0;
  Family witness;
  std::uint64_t nodes_explored = 0;
  bool proven_optimal = false;
  std::chrono::duration<double> wall_time{0};
};

// Ground-truth oracle: iterates all 2^(2^n) subfamilies.  Requires n <= 4.
SearchResult max_family_exhaustive(int n, const RuleSet& rules);
SearchResult max_family_exhaustive(int n, const ConstraintSpec& rule);

struct SearchOptions {
  std::uint64_t node_budget = 1'000'000;
  // Optional known-valid family to seed the incumbent; the search then
  // only reports improvements on it, so the result is never worse.
  const Family* warm_start = nullptr;
};

// Branch and bound over the complement structure: maximum independent set
// with a greedy clique-cover bound recomputed at every node and vertices
// ordered by descending degree (ties by mask).  proven_optimal is false
// iff the node budget ran out first, in which case the incumbent found so
// far is returned.  Graphs larger than the dense-row cap fall back to a
// greedy incumbent with proven_optimal = false.
SearchResult max_independent_set(ConflictGraph& graph,
                                 const SearchOptions& options = {});

// Convenience wrapper: builds the conflict graph (optionally layer
// restricted) and dispatches; for n <= 4 the result is cross-checked
// against the exhaustive oracle.
SearchResult max_family(int n, const RuleSet& rules,
                        std::optional<LayerRange> layers = {},
                        const SearchOptions& options = {});
SearchResult max_family(int n, const ConstraintSpec& rule,
                        std::optional<LayerRange> layers = {},
                        const SearchOptions& options = {});

}  // namespace setfam
