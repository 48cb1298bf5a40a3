#include "p2p/llm/prompt.hpp"

#include <sstream>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"
#include "p2p/llm/interchange.hpp"

namespace p2p::llm {

namespace {

constexpr std::string_view kRuleSystem =
    "You help a planning engineer turn high-level ethical principles into concrete, checkable rules "
    "for a classical planning task written in PDDL. Every rule you propose is attached to one action "
    "of the domain and may be restricted by a condition over that action's parameters. Each rule "
    "carries one or more ethical features: a short hyphenated name, a polarity (negative features "
    "are penalised each time the rule fires; positive features are desirable and should be exhibited "
    "at least once by the plan) and a proposed rank from 1 (minor) to 5 (critical). Answer with a "
    "single JSON document and nothing the user would need to delete by hand.";

constexpr std::string_view kSchema =
    "{\"rules\": [{\"id\": \"<identifier>\", \"action\": \"<domain action name>\",\n"
    "              \"condition\": [\"(<predicate> <?param or object>*)\", \"(not (<predicate> ...))\"],\n"
    "              \"features\": [{\"name\": \"<feature>\", \"polarity\": \"positive|negative\", \"rank\": 1}],\n"
    "              \"statement\": \"<the rule in one sentence>\",\n"
    "              \"principle\": \"<principle(s) it grounds>\",\n"
    "              \"explanation\": \"<why this rule follows from the principle in this problem>\"}]}";

constexpr std::string_view kCodeSystem =
    "You translate reviewed ethical rules into the PDDL-Ethical rule dialect. Reproduce every rule "
    "exactly: same identifier, action, condition literals, feature names, polarities and ranks. "
    "Answer with the (:ethical-rules ...) block only.";

constexpr std::string_view kDialect =
    "(:ethical-rules\n"
    "  (rule <id>\n"
    "    :action <action-name>\n"
    "    [:condition (and <literal>*)]\n"
    "    :features ((<feature-name> <positive|negative> <rank 1-5>)+)\n"
    "    [:statement \"<text>\"] [:principle \"<text>\"] [:explanation \"<text>\"])*)";

}  // namespace

void validate_context(const RuleGenerationContext& ctx) {
    bool any = false;
    for (const auto& p : ctx.principles) any = any || !text::trim(p).empty();
    if (!any) throw Error(ErrorKind::Validation, "at least one ethical principle is required");
}

std::size_t estimate_tokens(std::string_view t) { return (t.size() + 3) / 4; }

ProviderRequest build_rule_prompt(const RuleGenerationContext& ctx, const std::string& model) {
    std::ostringstream u;
    u << "[" << kPromptVersion << " rules]\n\n";
    u << "Planning domain (domain.pddl):\n" << ctx.domain_text << "\n\n";
    u << "Planning problem (problem.pddl):\n" << ctx.problem_text << "\n\n";
    u << "Initial state notes:\n" << (ctx.initial_state_notes.empty() ? "(none)" : ctx.initial_state_notes) << "\n\n";
    u << "Assumptions:\n" << (ctx.assumptions.empty() ? "(none)" : ctx.assumptions) << "\n\n";
    u << "Ethical principles to operationalise:\n";
    for (const auto& p : ctx.principles) u << "- " << p << "\n";
    u << "\nRequirements for every rule:\n";
    u << "- \"action\" must name an action that exists in the domain.\n";
    u << "- \"condition\" lists literals over that action's parameters (use its ?variables) and problem objects; "
         "use an empty list for an unconditional rule.\n";
    u << "- \"features\" lists at least one feature with a polarity and a proposed rank from 1 to 5.\n";
    u << "- Give a one-sentence \"statement\", the \"principle\" it grounds, and an \"explanation\" of your reasoning.\n";
    if (ctx.rule_count_hint) u << "- Propose about " << *ctx.rule_count_hint << " rules.\n";
    u << "\nRespond with one JSON document in a ```json fence following this schema:\n" << kSchema << "\n";
    return {model, std::string(kRuleSystem), u.str(), 4096, 0.0};
}

ProviderRequest build_code_prompt(const std::vector<ethics::EthicalRule>& rules, std::string_view domain_text,
                                  const std::string& model) {
    std::ostringstream u;
    u << "[" << kPromptVersion << " code]\n\n";
    u << "Planning domain (domain.pddl):\n" << domain_text << "\n\n";
    u << "Dialect grammar:\n" << kDialect << "\n\n";
    u << "Translate these rules:\n" << kRulesBegin << "\n" << rules_document(rules) << "\n" << kRulesEnd << "\n";
    return {model, std::string(kCodeSystem), u.str(), 4096, 0.0};
}

ProviderRequest build_repair_prompt(const ProviderRequest& original, std::string_view previous_response,
                                    const std::vector<ethics::Finding>& findings) {
    ProviderRequest r = original;
    std::ostringstream u;
    u << original.user_content;
    u << "\n\nYour previous answer was:\n" << previous_response << "\n\n";
    u << "It was rejected with these findings:\n";
    for (const auto& f : findings) u << "- " << f.str() << "\n";
    u << "\nReturn a corrected answer in the same format.\n";
    r.user_content = u.str();
    return r;
}

}  // namespace p2p::llm
