#pragma once

#include <string>
#include <vector>

#include "p2p/ethics/rules.hpp"
#include "p2p/ethics/validate.hpp"
#include "p2p/llm/prompt.hpp"
#include "p2p/llm/provider.hpp"

namespace p2p::llm {

struct RepairPolicy {
    int max_attempts = 3;  // initial request plus repairs
};

struct RuleGenerationResult {
    bool ok = false;
    std::vector<ethics::EthicalRule> rules;
    int attempts = 0;
    std::vector<ethics::Finding> findings;  // of the last attempt
};

// request -> parse -> validate, re-prompting with the findings until a
// fully valid rule list arrives or the policy is exhausted. TransportError
// from the provider propagates.
RuleGenerationResult generate_rules(Provider& provider, const RuleGenerationContext& ctx,
                                    const pddl::PlanningDomain& domain, const pddl::PlanningProblem* problem,
                                    const std::string& model, const RepairPolicy& policy = {});

struct CodeGenerationResult {
    bool ok = false;
    std::string code;
    std::vector<ethics::EthicalRule> rules;
    int attempts = 0;
    std::vector<ethics::Finding> findings;
};

// Locates the (:ethical-rules ...) block in a response.
std::optional<std::string> extract_rule_block(std::string_view response);

// Structural agreement on action, condition, feature names and polarities.
std::vector<ethics::Finding> compare_rule_structure(const std::vector<ethics::EthicalRule>& expected,
                                                    const std::vector<ethics::EthicalRule>& actual);

// Requests dialect text for `rules`; the answer must parse and match them
// structurally. Ranks in the result are then reset to the significances in
// `rules`, and the code re-printed from the result.
CodeGenerationResult generate_code(Provider& provider, const std::vector<ethics::EthicalRule>& rules,
                                   const pddl::PlanningDomain& domain, std::string_view domain_text,
                                   const pddl::PlanningProblem* problem, const std::string& model,
                                   const RepairPolicy& policy = {});

}  // namespace p2p::llm
