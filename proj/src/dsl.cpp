#include "setfam/dsl.hpp"

#include <charconv>
#include <cstdint>
#include <vector>

#include "setfam/errors.hpp"

namespace setfam {
namespace {

[[noreturn]] void bad(std::string_view text, std::size_t pos,
                      const std::string& what) {
  fail(Err::ParseError, "rule \"" + std::string(text) + "\": " + what +
                            " at position " + std::to_string(pos));
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }

  std::string_view word() {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ':' && text[pos] != ',') ++pos;
    return text.substr(start, pos - start);
  }

  void expect(char c) {
    if (done() || text[pos] != c)
      bad(text, pos, std::string("expected '") + c + "'");
    ++pos;
  }

  std::uint32_t number() {
    const std::size_t start = pos;
    std::string_view w = word();
    std::uint32_t value = 0;
    const auto [end, ec] =
        std::from_chars(w.data(), w.data() + w.size(), value);
    if (ec != std::errc{} || end != w.data() + w.size() || w.empty())
      bad(text, start, "expected a nonnegative integer");
    return value;
  }
};

ConstraintSpec rule_at(Cursor& cur) {
  const std::size_t start = cur.pos;
  const std::string_view tag = cur.word();
  if (tag == "diff") {
    cur.expect(':');
    return forbidden_difference(cur.number());
  }
  if (tag == "ratio") {
    cur.expect(':');
    const std::uint32_t p = cur.number();
    cur.expect(':');
    return forbidden_ratio(p, cur.number());
  }
  if (tag == "symdiff") {
    cur.expect(':');
    return forbidden_symmetric_difference(cur.number());
  }
  if (tag == "meet") {
    cur.expect(':');
    return forbidden_intersection(cur.number());
  }
  bad(cur.text, start,
      "unknown rule tag \"" + std::string(tag) +
          "\" (want diff, ratio, symdiff, or meet)");
}

}  // namespace

ConstraintSpec parse_rule(std::string_view text) {
  Cursor cur{text};
  ConstraintSpec rule = rule_at(cur);
  if (!cur.done()) bad(text, cur.pos, "trailing input");
  return rule;
}

RuleSet parse_rules(std::string_view text) {
  Cursor cur{text};
  RuleSet rules;
  while (true) {
    rules.push_back(rule_at(cur));
    if (cur.done()) break;
    cur.expect(',');
    if (cur.done()) bad(text, cur.pos, "expected a rule after ','");
  }
  return rules;
}

std::string render_rule(const ConstraintSpec& rule) { return rule_text(rule); }

std::string render_rules(const RuleSet& rules) {
  std::string out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i) out += ',';
    out += rule_text(rules[i]);
  }
  return out;
}

}  // namespace setfam
