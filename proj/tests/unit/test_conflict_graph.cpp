// Conflict graph construction: vertex order, adjacency, dense rows, and the
// independence <-> valid-family correspondence.

#include <algorithm>
#include <optional>
#include <vector>

#include "doctest.h"
#include "setfam/check.hpp"
#include "setfam/conflict_graph.hpp"
#include "setfam/rng.hpp"

using namespace setfam;

TEST_CASE("small graphs by hand") {
  // n = 1, diff:1: vertices {}, {1}; the single pair violates.
  ConflictGraph g1 = build_conflict_graph(1, forbidden_difference(1));
  g1.materialize();
  CHECK(g1.vertex_count() == 2);
  CHECK(g1.edge_count() == 1);
  CHECK(g1.edge(0, 1));

  // n = 2, diff:1: only { {}, {1,2} } misses, so C(4,2) - 1 = 5 edges.
  ConflictGraph g2 = build_conflict_graph(2, forbidden_difference(1));
  g2.materialize();
  CHECK(g2.vertex_count() == 4);
  CHECK(g2.edge_count() == 5);

  // n = 2, symdiff:2: {}-{1,2} and {1}-{2}.
  ConflictGraph g3 =
      build_conflict_graph(2, forbidden_symmetric_difference(2));
  g3.materialize();
  CHECK(g3.edge_count() == 2);
  CHECK(g3.edge(0, 3));
  CHECK(g3.edge(1, 2));
  CHECK(!g3.edge(0, 1));
}

TEST_CASE("vertices ascend and respect layer ranges") {
  ConflictGraph g =
      build_conflict_graph(5, forbidden_difference(1), LayerRange{2, 3});
  CHECK(g.vertex_count() == 20);
  CHECK(std::is_sorted(g.vertices().begin(), g.vertices().end()));
  for (SetMask m : g.vertices()) {
    CHECK(set_size(m) >= 2);
    CHECK(set_size(m) <= 3);
  }

  ConflictGraph layer =
      build_conflict_graph(6, forbidden_intersection(0), LayerRange{3, 3});
  CHECK(layer.vertex_count() == 20);
}

TEST_CASE("edges match the pair predicate and rows match edges") {
  const RuleSet rules = {forbidden_difference(1),
                         forbidden_symmetric_difference(2)};
  ConflictGraph g = build_conflict_graph(4, rules);
  g.materialize();

  std::uint64_t brute_edges = 0;
  std::vector<std::uint64_t> row(g.row_words());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    g.fill_row(i, row.data());
    CHECK(std::equal(row.begin(), row.end(), g.row(i)));
    CHECK(((row[i / 64] >> (i % 64)) & 1) == 0);
    for (std::size_t j = 0; j < g.vertex_count(); ++j) {
      const bool want =
          i != j && violates_any(rules, g.vertices()[i], g.vertices()[j]);
      CHECK(g.edge(i, j) == want);
      CHECK(((row[j / 64] >> (j % 64)) & 1) == (want ? 1 : 0));
      if (i < j && want) ++brute_edges;
    }
  }
  CHECK(g.edge_count() == brute_edges);
}

TEST_CASE("independent sets are exactly the valid families") {
  const RuleSet rules = {forbidden_difference(1)};
  ConflictGraph g = build_conflict_graph(5, rules);
  g.materialize();

  SplitMix64 rng{7};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> picked;
    std::vector<SetMask> masks;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (rng.below(8) == 0) {
        picked.push_back(v);
        masks.push_back(g.vertices()[v]);
      }
    if (masks.empty()) continue;
    bool independent = true;
    for (std::size_t a = 0; a < picked.size() && independent; ++a)
      for (std::size_t b = a + 1; b < picked.size(); ++b)
        if (g.edge(picked[a], picked[b])) {
          independent = false;
          break;
        }
    const Family fam = make_family_from_masks(5, masks);
    CHECK(check_family(fam, rules).ok == independent);
  }
}

TEST_CASE("caps and empty rules") {
  CHECK_THROWS_AS(build_conflict_graph(21, forbidden_difference(1)), Error);
  CHECK_THROWS_AS(build_conflict_graph(4, RuleSet{}), Error);
  // A layer window keeps big universes usable.
  ConflictGraph g =
      build_conflict_graph(24, forbidden_intersection(0), LayerRange{1, 1});
  CHECK(g.vertex_count() == 24);
}
