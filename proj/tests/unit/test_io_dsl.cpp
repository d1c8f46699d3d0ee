// Rule text parsing and the JSON / CSV serialization surface.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "setfam/dsl.hpp"
#include "setfam/errors.hpp"
#include "setfam/search.hpp"
#include "setfam/serialize.hpp"

using namespace setfam;

namespace {

Err code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Err::Internal;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("rule parsing round trips") {
  for (const std::string text :
       {"diff:1", "diff:3", "ratio:0:1", "ratio:2:3", "symdiff:2", "meet:0"}) {
    CHECK(render_rule(parse_rule(text)) == text);
  }
  const RuleSet rules = parse_rules("diff:1,meet:0,ratio:1:2");
  CHECK(rules.size() == 3);
  CHECK(render_rules(rules) == "diff:1,meet:0,ratio:1:2");
}

TEST_CASE("rule parsing rejects malformed text") {
  CHECK(code_of([] { parse_rule(""); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule("diff"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule("diff:"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule("diff:0"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule("diff:x"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule("diff:1:2"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule("gap:1"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule("ratio:2:4"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule("ratio:3:2"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule("diff:4294967296"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rules("diff:1,"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rules(""); }) == Err::ParseError);
  CHECK(code_of([] { parse_rules("diff:1,,meet:0"); }) == Err::ParseError);
  CHECK(code_of([] { parse_rule(" diff:1"); }) == Err::ParseError);

  // Messages carry the rule text and the offending position.
  const std::string msg = message_of([] { parse_rules("diff:1,gap:2"); });
  CHECK(msg.find("gap") != std::string::npos);
  CHECK(msg.find("position") != std::string::npos);
}

TEST_CASE("family json canonical form") {
  Family f;
  f.n = 6;
  f.sets = {0b001001, 0b000110, 0b000001};  // {1,4}, {2,3}, {1}
  const std::string text = family_to_json(f);
  // canonical order is (size, mask value): {2,3} is mask 6, {1,4} mask 9
  CHECK(text == "{\"n\":6,\"sets\":[[1],[2,3],[1,4]]}\n");

  const Family back = family_from_json(text);
  CHECK(back.n == 6);
  CHECK(back.sets == std::vector<SetMask>{0b000001, 0b000110, 0b001001});

  const Family masks = family_from_json("{\"n\": 6, \"masks\": [9, 6]}");
  CHECK(masks.sets == std::vector<SetMask>{9, 6});

  // Serialization is insensitive to input order of equal-size sets.
  Family g;
  g.n = 6;
  g.sets = {0b000110, 0b001001};
  Family h;
  h.n = 6;
  h.sets = {0b001001, 0b000110};
  CHECK(family_to_json(g) == family_to_json(h));
}

TEST_CASE("family json reader rejects malformed documents") {
  CHECK(code_of([] { family_from_json("not json"); }) == Err::ParseError);
  CHECK(code_of([] { family_from_json("[1,2]"); }) == Err::ParseError);
  CHECK(code_of([] { family_from_json("{\"sets\":[]}"); }) == Err::ParseError);
  CHECK(code_of([] { family_from_json("{\"n\":6}"); }) == Err::ParseError);
  CHECK(code_of([] {
          family_from_json("{\"n\":6,\"sets\":[],\"masks\":[]}");
        }) == Err::ParseError);
  CHECK(code_of([] {
          family_from_json("{\"n\":0,\"sets\":[]}");
        }) == Err::ParseError);
  CHECK(code_of([] {
          family_from_json("{\"n\":70,\"sets\":[]}");
        }) == Err::ParseError);
  CHECK(code_of([] {
          family_from_json("{\"n\":6,\"sets\":[[2,1]]}");
        }) == Err::ParseError);
  CHECK(code_of([] {
          family_from_json("{\"n\":6,\"sets\":[[1,1]]}");
        }) == Err::ParseError);
  CHECK(code_of([] {
          family_from_json("{\"n\":6,\"sets\":\"x\"}");
        }) == Err::ParseError);
  CHECK(code_of([] {
          family_from_json("{\"n\":6,\"sets\":[[7]]}");
        }) == Err::ElementOutOfRange);
  CHECK(code_of([] {
          family_from_json("{\"n\":6,\"sets\":[[1],[1]]}");
        }) == Err::DuplicateSet);
  CHECK(code_of([] {
          family_from_json("{\"n\":3,\"masks\":[8]}");
        }) == Err::ElementOutOfRange);
}

TEST_CASE("family files round trip") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "setfam_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "family.json").string();

  Family f;
  f.n = 5;
  f.sets = {0b00111, 0b11000};
  write_text_file(path, family_to_json(f));
  const Family back = load_family_file(path);
  CHECK(back.n == 5);
  // the reader canonicalizes to (size, mask) order
  CHECK(back.sets == std::vector<SetMask>{0b11000, 0b00111});

  CHECK(code_of([&] {
          load_family_file((dir / "missing.json").string());
        }) == Err::IoError);
  CHECK(code_of([&] {
          write_text_file((dir / "nodir" / "x.json").string(), "x");
        }) == Err::IoError);
  fs::remove_all(dir);
}

TEST_CASE("search result json") {
  const SearchResult r = max_family_exhaustive(2, forbidden_difference(1));
  CHECK(search_result_to_json(r) ==
        "{\"nodes_explored\":16,\"optimum\":2,\"proven_optimal\":true,"
        "\"witness\":{\"n\":2,\"sets\":[[],[1,2]]}}\n");
}

TEST_CASE("bound estimate json carries every field") {
  BoundEstimate est;
  est.samples = 100;
  est.mean = 0.125;
  est.std_err = 0.0625;
  est.analytic_lower = 0.1;
  est.analytic_upper = 0.2;
  est.L = 0.05;
  est.split = ChainSplit{12, 11};
  est.band_floor = 6;
  est.seed = 42;
  const std::string text = bound_estimate_to_json(est);
  CHECK(text ==
        "{\"L\":0.05,\"analytic_lower\":0.1,\"analytic_upper\":0.2,"
        "\"band_floor\":6,\"mean\":0.125,\"samples\":100,\"seed\":42,"
        "\"split\":{\"m\":11,\"n\":12},\"std_err\":0.0625}\n");

  const SymbolicCeiling ceil{"d_4", 64.0, "d_4 * (12*2^2)^2 / 6^2"};
  const std::string block = block_estimate_to_json(est, 2, ceil);
  CHECK(block.find("\"k\":2") != std::string::npos);
  CHECK(block.find("\"ceiling\":{\"constant\":\"d_4\",\"expr\":\"d_4 * "
                   "(12*2^2)^2 / 6^2\",\"factor\":64.0}") !=
        std::string::npos);
  CHECK(block.find("\"mean\":0.125") != std::string::npos);
}

TEST_CASE("report rendering") {
  std::vector<ReportRow> rows;
  rows.push_back(ReportRow{4, "diff:1", "search", 4, 6, 4.0 * 4 / 6, "proven=1;nodes=9"});
  rows.push_back(ReportRow{4, "diff:1", "a-star", 2, 6, 2.0 * 4 / 6, "r=1"});
  rows.push_back(ReportRow{3, "diff:1", "a-star", 2, 3, 2.0, "r=0"});

  const std::string csv = report_to_csv(rows);
  const std::string want =
      "n,spec,label,size,central_binomial,normalized_ratio,extra\n"
      "3,diff:1,a-star,2,3,2,r=0\n"
      "4,diff:1,a-star,2,6,1.33333,r=1\n"
      "4,diff:1,search,4,6,2.66667,proven=1;nodes=9\n";
  CHECK(csv == want);

  // Fields containing separators are quoted with doubled inner quotes.
  std::vector<ReportRow> tricky;
  tricky.push_back(ReportRow{5, "diff:1,meet:0", "x\"y", 1, 10, 0.5, ""});
  const std::string qcsv = report_to_csv(tricky);
  CHECK(qcsv.find("\"diff:1,meet:0\"") != std::string::npos);
  CHECK(qcsv.find("\"x\"\"y\"") != std::string::npos);

  CHECK(code_of([] { report_to_csv({}); }) == Err::IoError);
  CHECK(code_of([] { report_to_json({}); }) == Err::IoError);

  const std::string json = report_to_json(rows);
  const std::size_t first = json.find("\"n\":3");
  const std::size_t second = json.find("\"n\":4");
  CHECK(first != std::string::npos);
  CHECK(second != std::string::npos);
  CHECK(first < second);
  CHECK(json.find("\"label\":\"a-star\"") != std::string::npos);
}
