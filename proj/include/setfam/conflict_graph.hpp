#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "setfam/constraint.hpp"
#include "setfam/family.hpp"

namespace setfam {

struct LayerRange {
  int lo;
  int hi;
};

// Graph on subsets of [n] (optionally restricted to a size range) whose
// edges are the constraint-violating pairs, so valid families are exactly
// its independent sets.  Vertices are stored in increasing mask order.
//
// Adjacency comes in two strengths: edge()/fill_row() always work, by
// evaluating the rules; materialize() additionally builds dense bitset
// rows, which the branch-and-bound needs, and is limited to
// kDenseVertexCap vertices (128 MiB of rows at the cap).
class ConflictGraph {
 public:
  static constexpr std::size_t kVertexCap = std::size_t{1} << 20;
  static constexpr std::size_t kDenseVertexCap = std::size_t{1} << 15;

  ConflictGraph(int n, RuleSet rules, std::optional<LayerRange> layers);

  int n() const { return n_; }
  const RuleSet& rules() const { return rules_; }
  std::size_t vertex_count() const { return verts_.size(); }
  const std::vector<SetMask>& vertices() const { return verts_; }
  std::size_t row_words() const { return row_words_; }

  bool edge(std::size_t i, std::size_t j) const;

  // Writes vertex i's adjacency bitmap (row_words() words) via the active
  // kernel table, diagonal bit cleared.
  void fill_row(std::size_t i, std::uint64_t* out) const;

  void materialize();
  bool materialized() const { return !rows_.empty(); }
  const std::uint64_t* row(std::size_t i) const {
    return rows_.data() + i * row_words_;
  }
  std::uint64_t edge_count() const;  // requires materialized()

 private:
  int n_;
  RuleSet rules_;
  std::vector<SetMask> verts_;
  std::size_t row_words_ = 0;
  std::vector<std::uint64_t> rows_;
};

ConflictGraph build_conflict_graph(int n, const RuleSet& rules,
                                   std::optional<LayerRange> layers = {});
ConflictGraph build_conflict_graph(int n, const ConstraintSpec& rule,
                                   std::optional<LayerRange> layers = {});

}  // namespace setfam
