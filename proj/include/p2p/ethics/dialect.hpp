#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "p2p/ethics/rules.hpp"
#include "p2p/pddl/sexpr.hpp"

namespace p2p::ethics {

// Ethical-rule dialect:
//
//   (:ethical-rules
//     (rule <id>
//       :action <action-name>
//       [:condition (and <literal>*)]
//       :features ((<name> <positive|negative> <rank 1-5>)+)
//       [:statement "<text>"] [:principle "<text>"] [:explanation "<text>"])*)
//
// The block may stand alone or follow a domain's (define ...) form in the
// same text. Parsed rules have status Generated.
//
// With a problem, condition constants must name domain constants or
// problem objects; without one, non-domain constants are kept verbatim.
std::vector<EthicalRule> parse_ethical(std::string_view text, const pddl::PlanningDomain& domain,
                                       const pddl::PlanningProblem* problem = nullptr);

// Rules from an already-read (:ethical-rules ...) form.
std::vector<EthicalRule> parse_ethical_form(const pddl::SExpr& form, const pddl::PlanningDomain& domain,
                                            const pddl::PlanningProblem* problem = nullptr);

// Deterministic; round-trips through parse_ethical (status excepted).
std::string print_ethical(const std::vector<EthicalRule>& rules);

}  // namespace p2p::ethics
