#pragma once

#include <string>
#include <string_view>

#include "setfam/constraint.hpp"

namespace setfam {

// Text forms: `diff:k`, `ratio:p:q`, `symdiff:d`, `meet:k`, and comma
// joins of those for conjunctions ("diff:1,meet:0").  parse errors carry
// the offending position in the message.
ConstraintSpec parse_rule(std::string_view text);
RuleSet parse_rules(std::string_view text);

std::string render_rule(const ConstraintSpec& rule);
std::string render_rules(const RuleSet& rules);

}  // namespace setfam
