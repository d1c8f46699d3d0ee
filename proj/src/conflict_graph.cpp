#include "setfam/conflict_graph.hpp"

#include <algorithm>

#include "rule_scan.hpp"

namespace setfam {

ConflictGraph::ConflictGraph(int n, RuleSet rules,
                             std::optional<LayerRange> layers)
    : n_(n), rules_(std::move(rules)) {
  require_universe(n);
  if (n < 1) fail(Err::UniverseTooLarge, "universe must have at least 1 element");

  if (layers) {
    if (layers->lo < 0 || layers->hi > n || layers->lo > layers->hi)
      fail(Err::PreconditionViolated,
           "layer range [" + std::to_string(layers->lo) + ", " +
               std::to_string(layers->hi) + "] invalid for n=" +
               std::to_string(n));
    std::uint64_t total = 0;
    for (int s = layers->lo; s <= layers->hi; ++s) {
      std::uint64_t c = 1;
      int kk = std::min(s, n - s);
      for (int i = 1; i <= kk; ++i)
        c = c * static_cast<std::uint64_t>(n - kk + i) /
            static_cast<std::uint64_t>(i);
      total += c;
      if (total > kVertexCap) break;
    }
    if (total > kVertexCap)
      fail(Err::UniverseTooLarge,
           "layer range holds more than 2^20 vertices");
    verts_.reserve(total);
    for (int s = layers->lo; s <= layers->hi; ++s)
      for_each_subset_of_size(n, s, [&](SetMask m) { verts_.push_back(m); });
    std::sort(verts_.begin(), verts_.end());
  } else {
    if (n > 20)
      fail(Err::UniverseTooLarge,
           "full subset lattice capped at n <= 20 (2^20 vertices); "
           "restrict layers for larger n");
    verts_.resize(std::size_t{1} << n);
    for (std::size_t i = 0; i < verts_.size(); ++i)
      verts_[i] = static_cast<SetMask>(i);
  }
  row_words_ = (verts_.size() + 63) / 64;
}

bool ConflictGraph::edge(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  if (materialized())
    return (row(i)[j >> 6] >> (j & 63)) & 1;
  return violates_any(rules_, verts_[i], verts_[j]);
}

void ConflictGraph::fill_row(std::size_t i, std::uint64_t* out) const {
  const KernelTable& kt = active_kernels();
  detail::scan_rule(kt, rules_.front(), verts_[i], verts_.data(),
                    verts_.size(), out);
  if (rules_.size() > 1) {
    std::vector<std::uint64_t> extra(row_words_);
    for (std::size_t r = 1; r < rules_.size(); ++r) {
      detail::scan_rule(kt, rules_[r], verts_[i], verts_.data(),
                        verts_.size(), extra.data());
      for (std::size_t w = 0; w < row_words_; ++w) out[w] |= extra[w];
    }
  }
  out[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

void ConflictGraph::materialize() {
  if (materialized()) return;
  if (verts_.size() > kDenseVertexCap)
    fail(Err::PreconditionViolated,
         "dense adjacency limited to " + std::to_string(kDenseVertexCap) +
             " vertices, got " + std::to_string(verts_.size()));
  rows_.assign(verts_.size() * row_words_, 0);
  for (std::size_t i = 0; i < verts_.size(); ++i)
    fill_row(i, rows_.data() + i * row_words_);
}

std::uint64_t ConflictGraph::edge_count() const {
  if (!materialized())
    fail(Err::PreconditionViolated, "edge_count requires materialized rows");
  const KernelTable& kt = active_kernels();
  return kt.popcount_words(rows_.data(), rows_.size()) / 2;
}

ConflictGraph build_conflict_graph(int n, const RuleSet& rules,
                                   std::optional<LayerRange> layers) {
  if (rules.empty())
    fail(Err::PreconditionViolated, "conflict graph needs at least one rule");
  return ConflictGraph(n, rules, layers);
}

ConflictGraph build_conflict_graph(int n, const ConstraintSpec& rule,
                                   std::optional<LayerRange> layers) {
  return ConflictGraph(n, RuleSet{rule}, layers);
}

}  // namespace setfam
