#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p2p/ethics/rules.hpp"
#include "p2p/ethics/validate.hpp"
#include "p2p/llm/provider.hpp"

namespace p2p::llm {

// Bumped whenever prompt wording changes; mock fixtures key on the text.
inline constexpr std::string_view kPromptVersion = "p2p-prompts-v1";

// Rough context budget for a single request, in tokens.
inline constexpr std::size_t kDefaultContextBudget = 8192;

// Delimit the rules document embedded in a code-generation request.
inline constexpr std::string_view kRulesBegin = "BEGIN RULES DOCUMENT";
inline constexpr std::string_view kRulesEnd = "END RULES DOCUMENT";

struct RuleGenerationContext {
    std::string domain_text;
    std::string problem_text;
    std::string initial_state_notes;
    std::string assumptions;
    std::vector<std::string> principles;
    std::optional<int> rule_count_hint;

    bool operator==(const RuleGenerationContext&) const = default;
};

// Throws Validation when no principle is given.
void validate_context(const RuleGenerationContext& ctx);

// ~4 characters per token.
std::size_t estimate_tokens(std::string_view text);

ProviderRequest build_rule_prompt(const RuleGenerationContext& ctx, const std::string& model = "mock");

ProviderRequest build_code_prompt(const std::vector<ethics::EthicalRule>& rules, std::string_view domain_text,
                                  const std::string& model = "mock");

// Follow-up request carrying the previous answer and its findings verbatim.
ProviderRequest build_repair_prompt(const ProviderRequest& original, std::string_view previous_response,
                                    const std::vector<ethics::Finding>& findings);

}  // namespace p2p::llm
