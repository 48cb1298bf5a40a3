#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "p2p/ethics/rules.hpp"
#include "p2p/ethics/validate.hpp"

namespace p2p::llm {

// Rules interchange document exchanged with text-generation providers:
//
//   {"rules": [{"id": "...", "action": "...",
//               "condition": ["(pred ?x)", "(not (pred2))"],
//               "features": [{"name": "...", "polarity": "negative", "rank": 2}],
//               "statement": "...", "principle": "...", "explanation": "..."}]}
//
// Providers usually wrap it in a ```json fence with prose around it.

nlohmann::json rule_to_json(const ethics::EthicalRule& rule, bool include_status = false);

// Resolves names against the domain (and problem when given); throws Error
// on any malformed or unresolvable field.
ethics::EthicalRule rule_from_json(const nlohmann::json& j, const pddl::PlanningDomain& domain,
                                   const pddl::PlanningProblem* problem = nullptr);

std::string rules_document(const std::vector<ethics::EthicalRule>& rules);

// Text between the first '{' and the last '}' (outermost document
// delimiters), or nothing.
std::optional<std::string> extract_document(std::string_view response);

struct RuleParseResult {
    std::vector<ethics::EthicalRule> rules;
    std::vector<ethics::Finding> findings;
    bool ok = false;  // no error findings
};

// Never throws; every problem becomes an error finding.
RuleParseResult parse_rule_response(std::string_view response, const pddl::PlanningDomain& domain,
                                    const pddl::PlanningProblem* problem = nullptr);

}  // namespace p2p::llm
