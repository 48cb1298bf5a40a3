#include "p2p/ethics/rules.hpp"

#include <algorithm>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"
#include "p2p/ethics/validate.hpp"

namespace p2p::ethics {

std::string_view to_string(Polarity p) { return p == Polarity::Positive ? "positive" : "negative"; }

std::optional<Polarity> parse_polarity(std::string_view s) {
    if (text::iequals(s, "positive")) return Polarity::Positive;
    if (text::iequals(s, "negative")) return Polarity::Negative;
    return std::nullopt;
}

std::string_view to_string(RuleStatus s) {
    switch (s) {
    case RuleStatus::Generated: return "generated";
    case RuleStatus::Edited: return "edited";
    case RuleStatus::UserAdded: return "user-added";
    }
    return "generated";
}

std::optional<RuleStatus> parse_status(std::string_view s) {
    if (text::iequals(s, "generated")) return RuleStatus::Generated;
    if (text::iequals(s, "edited")) return RuleStatus::Edited;
    if (text::iequals(s, "user-added")) return RuleStatus::UserAdded;
    return std::nullopt;
}

bool EthicalRule::has_negative() const {
    return std::any_of(features.begin(), features.end(), [](const auto& f) { return f.polarity == Polarity::Negative; });
}

bool EthicalRule::has_positive() const {
    return std::any_of(features.begin(), features.end(), [](const auto& f) { return f.polarity == Polarity::Positive; });
}

const EthicalFeature* EthicalRule::find_feature(std::string_view n) const {
    for (const auto& f : features)
        if (text::iequals(f.name, n)) return &f;
    return nullptr;
}

const EthicalRule* find_rule(const std::vector<EthicalRule>& rules, std::string_view id) {
    for (const auto& r : rules)
        if (text::iequals(r.id, id)) return &r;
    return nullptr;
}

EthicalTask make_ethical_task(pddl::PlanningDomain domain, pddl::PlanningProblem problem, std::vector<EthicalRule> rules) {
    auto report = validate_rules(rules, domain, &problem);
    if (report.has_errors()) {
        std::vector<std::string> lines;
        for (const auto& f : report.findings)
            if (f.severity == Severity::Error) lines.push_back(f.str());
        throw Error(ErrorKind::Validation, "invalid rules: " + text::join(lines, "; "));
    }
    return {std::move(domain), std::move(problem), std::move(rules)};
}

std::vector<EthicalRule> set_significance(std::vector<EthicalRule> rules, std::string_view rule_id,
                                          std::string_view feature, int rank) {
    if (rank < kMinSignificance || rank > kMaxSignificance)
        throw Error(ErrorKind::Range, "significance " + std::to_string(rank) + " outside [1,5]");
    for (auto& r : rules) {
        if (!text::iequals(r.id, rule_id)) continue;
        for (auto& f : r.features) {
            if (text::iequals(f.name, feature)) {
                f.significance = rank;
                return rules;
            }
        }
        throw Error(ErrorKind::Unknown, "rule '" + r.id + "' has no feature '" + std::string(feature) + "'");
    }
    throw Error(ErrorKind::Unknown, "unknown rule '" + std::string(rule_id) + "'");
}

}  // namespace p2p::ethics
