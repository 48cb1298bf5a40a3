#include "p2p/llm/generate.hpp"

#include <algorithm>
#include <set>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"
#include "p2p/ethics/dialect.hpp"
#include "p2p/llm/interchange.hpp"

namespace p2p::llm {

namespace {

ethics::Finding error_finding(std::string rule_id, std::string message) {
    return {std::move(rule_id), ethics::Severity::Error, std::move(message)};
}

std::set<std::string> literal_set(const std::vector<pddl::Literal>& lits) {
    std::set<std::string> out;
    for (const auto& l : lits) out.insert(text::to_lower(l.str()));
    return out;
}

}  // namespace

RuleGenerationResult generate_rules(Provider& provider, const RuleGenerationContext& ctx,
                                    const pddl::PlanningDomain& domain, const pddl::PlanningProblem* problem,
                                    const std::string& model, const RepairPolicy& policy) {
    validate_context(ctx);
    if (policy.max_attempts < 1) throw Error(ErrorKind::Range, "repair policy needs at least one attempt");

    RuleGenerationResult result;
    const ProviderRequest first = build_rule_prompt(ctx, model);
    ProviderRequest request = first;
    while (result.attempts < policy.max_attempts) {
        ++result.attempts;
        const std::string response = provider.complete(request);
        RuleParseResult parsed = parse_rule_response(response, domain, problem);
        result.findings = parsed.findings;
        if (parsed.ok) {
            result.ok = true;
            result.rules = std::move(parsed.rules);
            return result;
        }
        request = build_repair_prompt(first, response, parsed.findings);
    }
    return result;
}

std::optional<std::string> extract_rule_block(std::string_view response) {
    const std::string lower = text::to_lower(response);
    const auto start = lower.find("(:ethical-rules");
    if (start == std::string::npos) return std::nullopt;
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = start; i < response.size(); ++i) {
        const char c = response[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == ';') {
            while (i < response.size() && response[i] != '\n') ++i;
        } else if (c == '(') ++depth;
        else if (c == ')' && --depth == 0) return std::string(response.substr(start, i - start + 1));
    }
    return std::nullopt;
}

std::vector<ethics::Finding> compare_rule_structure(const std::vector<ethics::EthicalRule>& expected,
                                                    const std::vector<ethics::EthicalRule>& actual) {
    std::vector<ethics::Finding> out;
    if (expected.size() != actual.size()) {
        out.push_back(error_finding("", "expected " + std::to_string(expected.size()) + " rule(s), code has " +
                                            std::to_string(actual.size())));
        return out;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto& e = expected[i];
        const auto& a = actual[i];
        if (!text::iequals(e.id, a.id))
            out.push_back(error_finding(e.id, "rule " + std::to_string(i + 1) + " is named '" + a.id + "'"));
        if (!text::iequals(e.trigger_action, a.trigger_action))
            out.push_back(error_finding(e.id, "action is '" + a.trigger_action + "', expected '" +
                                                  e.trigger_action + "'"));
        if (literal_set(e.condition) != literal_set(a.condition))
            out.push_back(error_finding(e.id, "condition differs from the reviewed rule"));
        if (e.features.size() != a.features.size()) {
            out.push_back(error_finding(e.id, "has " + std::to_string(a.features.size()) + " feature(s), expected " +
                                                  std::to_string(e.features.size())));
            continue;
        }
        for (std::size_t k = 0; k < e.features.size(); ++k) {
            const auto& fe = e.features[k];
            const auto& fa = a.features[k];
            if (!text::iequals(fe.name, fa.name) || fe.polarity != fa.polarity)
                out.push_back(error_finding(e.id, "feature " + std::to_string(k + 1) + " is (" + fa.name + " " +
                                                      std::string(ethics::to_string(fa.polarity)) + "), expected (" +
                                                      fe.name + " " + std::string(ethics::to_string(fe.polarity)) +
                                                      ")"));
        }
    }
    return out;
}

CodeGenerationResult generate_code(Provider& provider, const std::vector<ethics::EthicalRule>& rules,
                                   const pddl::PlanningDomain& domain, std::string_view domain_text,
                                   const pddl::PlanningProblem* problem, const std::string& model,
                                   const RepairPolicy& policy) {
    if (policy.max_attempts < 1) throw Error(ErrorKind::Range, "repair policy needs at least one attempt");

    CodeGenerationResult result;
    const ProviderRequest first = build_code_prompt(rules, domain_text, model);
    ProviderRequest request = first;
    while (result.attempts < policy.max_attempts) {
        ++result.attempts;
        const std::string response = provider.complete(request);
        std::vector<ethics::Finding> findings;
        std::vector<ethics::EthicalRule> parsed;
        if (auto block = extract_rule_block(response)) {
            try {
                parsed = ethics::parse_ethical(*block, domain, problem);
            } catch (const Error& e) {
                findings.push_back(error_finding("", e.what()));
            }
        } else {
            findings.push_back(error_finding("", "no (:ethical-rules ...) block in response"));
        }
        if (findings.empty()) findings = compare_rule_structure(rules, parsed);
        if (findings.empty()) {
            for (std::size_t i = 0; i < parsed.size(); ++i) {
                parsed[i].status = rules[i].status;
                for (std::size_t k = 0; k < parsed[i].features.size(); ++k)
                    parsed[i].features[k].significance = rules[i].features[k].significance;
            }
            const auto report = ethics::validate_rules(parsed, domain, problem);
            for (const auto& f : report.findings)
                if (f.severity == ethics::Severity::Error) findings.push_back(f);
        }
        if (findings.empty()) {
            result.ok = true;
            result.code = ethics::print_ethical(parsed);
            result.rules = std::move(parsed);
            result.findings.clear();
            return result;
        }
        result.findings = findings;
        request = build_repair_prompt(first, response, findings);
    }
    return result;
}

}  // namespace p2p::llm
