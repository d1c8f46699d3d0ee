#include "setfam/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "setfam/errors.hpp"

namespace setfam {
namespace {

using nlohmann::json;

json family_json(const Family& family) {
  std::vector<SetMask> masks = family.sets;
  std::sort(masks.begin(), masks.end(), [](SetMask a, SetMask b) {
    const int sa = set_size(a), sb = set_size(b);
    if (sa != sb) return sa < sb;
    return a < b;
  });
  json sets = json::array();
  for (SetMask m : masks) sets.push_back(elements_of(m));
  return json{{"n", family.n}, {"sets", std::move(sets)}};
}

long long int_field(const json& j, const char* key) {
  if (!j.contains(key))
    fail(Err::ParseError, std::string("family json: missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer())
    fail(Err::ParseError,
         std::string("family json: \"") + key + "\" must be an integer");
  return v.get<long long>();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void sort_rows(std::vector<ReportRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     if (a.n != b.n) return a.n < b.n;
                     return a.label < b.label;
                   });
}

}  // namespace

std::string family_to_json(const Family& family) {
  return family_json(family).dump() + "\n";
}

Family family_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Err::ParseError, std::string("family json: ") + e.what());
  }
  if (!j.is_object()) fail(Err::ParseError, "family json: expected an object");

  const long long n = int_field(j, "n");
  if (n < 1 || n > kMaxUniverse)
    fail(Err::ParseError, "family json: n out of range");

  const bool has_sets = j.contains("sets");
  const bool has_masks = j.contains("masks");
  if (has_sets == has_masks)
    fail(Err::ParseError,
         "family json: need exactly one of \"sets\" or \"masks\"");

  if (has_masks) {
    const json& arr = j.at("masks");
    if (!arr.is_array())
      fail(Err::ParseError, "family json: \"masks\" must be an array");
    std::vector<SetMask> masks;
    masks.reserve(arr.size());
    for (const json& v : arr) {
      if (!v.is_number_unsigned())
        fail(Err::ParseError,
             "family json: masks must be nonnegative integers");
      masks.push_back(v.get<std::uint64_t>());
    }
    return make_family_from_masks(static_cast<int>(n), masks);
  }

  const json& arr = j.at("sets");
  if (!arr.is_array())
    fail(Err::ParseError, "family json: \"sets\" must be an array");
  std::vector<std::vector<int>> sets;
  sets.reserve(arr.size());
  for (const json& lst : arr) {
    if (!lst.is_array())
      fail(Err::ParseError, "family json: each set must be an array");
    std::vector<int> elems;
    elems.reserve(lst.size());
    for (const json& v : lst) {
      if (!v.is_number_integer())
        fail(Err::ParseError, "family json: elements must be integers");
      elems.push_back(v.get<int>());
    }
    for (std::size_t i = 1; i < elems.size(); ++i)
      if (elems[i] <= elems[i - 1])
        fail(Err::ParseError,
             "family json: element lists must be strictly increasing");
    sets.push_back(std::move(elems));
  }
  return make_family(static_cast<int>(n), sets);
}

Family load_family_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(Err::IoError, "cannot read " + path);
  return family_from_json(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::IoError, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) fail(Err::IoError, "cannot write " + path);
}

std::string search_result_to_json(const SearchResult& result) {
  json j{{"optimum", result.optimum},
         {"witness", family_json(result.witness)},
         {"nodes_explored", result.nodes_explored},
         {"proven_optimal", result.proven_optimal}};
  return j.dump() + "\n";
}

std::string bound_estimate_to_json(const BoundEstimate& estimate) {
  json j{{"samples", estimate.samples},
         {"mean", estimate.mean},
         {"std_err", estimate.std_err},
         {"analytic_lower", estimate.analytic_lower},
         {"analytic_upper", estimate.analytic_upper},
         {"L", estimate.L},
         {"split", json{{"n", estimate.split.n}, {"m", estimate.split.m}}},
         {"band_floor", estimate.band_floor},
         {"seed", estimate.seed}};
  return j.dump() + "\n";
}

std::string block_estimate_to_json(const BoundEstimate& estimate, int k,
                                   const SymbolicCeiling& ceiling) {
  json j = json::parse(bound_estimate_to_json(estimate));
  j["k"] = k;
  j["ceiling"] = json{{"constant", ceiling.constant},
                      {"factor", ceiling.factor},
                      {"expr", ceiling.expr}};
  return j.dump() + "\n";
}

std::string report_to_csv(std::vector<ReportRow> rows) {
  if (rows.empty()) fail(Err::IoError, "report has no rows");
  sort_rows(rows);
  std::string out = "n,spec,label,size,central_binomial,normalized_ratio,extra\n";
  for (const ReportRow& r : rows) {
    out += std::to_string(r.n);
    out += ',';
    out += csv_field(r.spec);
    out += ',';
    out += csv_field(r.label);
    out += ',';
    out += std::to_string(r.size);
    out += ',';
    out += std::to_string(r.central_binomial);
    out += ',';
    out += format_double(r.normalized_ratio);
    out += ',';
    out += csv_field(r.extra);
    out += '\n';
  }
  return out;
}

std::string report_to_json(std::vector<ReportRow> rows) {
  if (rows.empty()) fail(Err::IoError, "report has no rows");
  sort_rows(rows);
  json arr = json::array();
  for (const ReportRow& r : rows)
    arr.push_back(json{{"n", r.n},
                       {"spec", r.spec},
                       {"label", r.label},
                       {"size", r.size},
                       {"central_binomial", r.central_binomial},
                       {"normalized_ratio", r.normalized_ratio},
                       {"extra", r.extra}});
  return arr.dump() + "\n";
}

}  // namespace setfam
