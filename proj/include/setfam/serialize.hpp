#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setfam/chains.hpp"
#include "setfam/family.hpp"
#include "setfam/search.hpp"

namespace setfam {

// Canonical form: {"n": 6, "sets": [[2,3],[1,4]]} with strictly increasing
// element lists and sets ordered by (size, mask).  The reader also accepts
// {"n": 6, "masks": [6, 9]}.
std::string family_to_json(const Family& family);
Family family_from_json(const std::string& text);

Family load_family_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {optimum, witness, nodes_explored, proven_optimal}; wall time is
// deliberately not serialized so identical runs produce identical bytes.
std::string search_result_to_json(const SearchResult& result);

std::string bound_estimate_to_json(const BoundEstimate& estimate);

// Block variant: the bound-estimate fields plus k and the symbolic
// ceiling (constant token, factor, expression).
std::string block_estimate_to_json(const BoundEstimate& estimate, int k,
                                   const SymbolicCeiling& ceiling);

struct ReportRow {
  int n = 0;
  std::string spec;
  std::string label;
  std::uint64_t size = 0;
  std::uint64_t central_binomial = 0;
  double normalized_ratio = 0.0;  // size * n^k / C(n, n/2)
  std::string extra;
};

// Rows sorted by (n, label); header `n,spec,label,size,central_binomial,
// normalized_ratio,extra`; floats rendered with 6 significant digits.
// Empty input is an IoError.
std::string report_to_csv(std::vector<ReportRow> rows);
std::string report_to_json(std::vector<ReportRow> rows);

}  // namespace setfam
