#include "p2p/llm/interchange.hpp"

#include <algorithm>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"
#include "p2p/pddl/parser.hpp"

namespace p2p::llm {

using ethics::EthicalRule;
using nlohmann::json;

nlohmann::json rule_to_json(const EthicalRule& rule, bool include_status) {
    json conds = json::array();
    for (const auto& l : rule.condition) conds.push_back(l.str());
    json feats = json::array();
    for (const auto& f : rule.features)
        feats.push_back({{"name", f.name}, {"polarity", std::string(ethics::to_string(f.polarity))}, {"rank", f.significance}});
    json j = {{"id", rule.id},
              {"action", rule.trigger_action},
              {"condition", conds},
              {"features", feats},
              {"statement", rule.statement},
              {"principle", rule.principle},
              {"explanation", rule.explanation}};
    if (include_status) j["status"] = std::string(ethics::to_string(rule.status));
    return j;
}

namespace {

std::string string_field(const json& j, const char* key, bool required) {
    if (!j.contains(key) || j[key].is_null()) {
        if (required) throw Error(ErrorKind::Syntax, std::string("missing field '") + key + "'");
        return {};
    }
    if (!j[key].is_string()) throw Error(ErrorKind::Syntax, std::string("field '") + key + "' must be a string");
    return j[key].get<std::string>();
}

}  // namespace

EthicalRule rule_from_json(const json& j, const pddl::PlanningDomain& domain, const pddl::PlanningProblem* problem) {
    if (!j.is_object()) throw Error(ErrorKind::Syntax, "rule must be an object");
    EthicalRule rule;
    rule.id = string_field(j, "id", true);
    const std::string action_name = string_field(j, "action", true);
    const auto* action = domain.find_action(action_name);
    if (!action) throw Error(ErrorKind::Unknown, "unknown action '" + action_name + "'");
    rule.trigger_action = action->name;
    rule.statement = string_field(j, "statement", false);
    rule.principle = string_field(j, "principle", false);
    rule.explanation = string_field(j, "explanation", false);
    if (j.contains("status") && j["status"].is_string()) {
        auto s = ethics::parse_status(j["status"].get<std::string>());
        if (!s) throw Error(ErrorKind::Syntax, "unknown status '" + j["status"].get<std::string>() + "'");
        rule.status = *s;
    }

    pddl::ConditionScope scope{&domain, action, problem, problem != nullptr};
    if (j.contains("condition") && !j["condition"].is_null()) {
        const json& c = j["condition"];
        std::vector<std::string> literals;
        if (c.is_string()) {
            literals.push_back(c.get<std::string>());
        } else if (c.is_array()) {
            for (const auto& x : c) {
                if (!x.is_string()) throw Error(ErrorKind::Syntax, "condition literals must be strings");
                literals.push_back(x.get<std::string>());
            }
        } else {
            throw Error(ErrorKind::Syntax, "condition must be a list of literal strings");
        }
        for (const auto& text : literals) {
            if (text::trim(text).empty()) continue;
            auto parsed = pddl::parse_condition(pddl::read_sexpr(text), scope);
            rule.condition.insert(rule.condition.end(), parsed.begin(), parsed.end());
        }
    }

    if (!j.contains("features") || !j["features"].is_array()) throw Error(ErrorKind::Syntax, "missing 'features' list");
    for (const auto& f : j["features"]) {
        if (!f.is_object()) throw Error(ErrorKind::Syntax, "feature must be an object");
        ethics::EthicalFeature feature;
        feature.name = string_field(f, "name", true);
        auto polarity = ethics::parse_polarity(string_field(f, "polarity", true));
        if (!polarity) throw Error(ErrorKind::Syntax, "feature '" + feature.name + "' polarity must be positive or negative");
        feature.polarity = *polarity;
        if (!f.contains("rank") || !f["rank"].is_number_integer())
            throw Error(ErrorKind::Syntax, "feature '" + feature.name + "' needs an integer rank");
        feature.significance = f["rank"].get<int>();
        rule.features.push_back(std::move(feature));
    }
    return rule;
}

std::string rules_document(const std::vector<EthicalRule>& rules) {
    json arr = json::array();
    for (const auto& r : rules) arr.push_back(rule_to_json(r));
    return json{{"rules", arr}}.dump(2);
}

std::optional<std::string> extract_document(std::string_view response) {
    auto first = response.find('{');
    auto last = response.rfind('}');
    if (first == std::string_view::npos || last == std::string_view::npos || last < first) return std::nullopt;
    return std::string(response.substr(first, last - first + 1));
}

RuleParseResult parse_rule_response(std::string_view response, const pddl::PlanningDomain& domain,
                                     const pddl::PlanningProblem* problem) {
    RuleParseResult result;
    auto error = [&](std::string rule_id, std::string msg) {
        result.findings.push_back({std::move(rule_id), ethics::Severity::Error, std::move(msg)});
    };
    auto doc = extract_document(response);
    if (!doc) {
        error("", "response contains no rules document");
        return result;
    }
    json parsed = json::parse(*doc, nullptr, false);
    if (parsed.is_discarded()) {
        error("", "rules document is not valid JSON");
        return result;
    }
    if (!parsed.is_object() || !parsed.contains("rules") || !parsed["rules"].is_array()) {
        error("", "rules document needs a top-level \"rules\" list");
        return result;
    }
    std::size_t index = 0;
    for (const auto& item : parsed["rules"]) {
        ++index;
        std::string id = item.is_object() && item.contains("id") && item["id"].is_string() ? item["id"].get<std::string>()
                                                                                              : "#" + std::to_string(index);
        try {
            EthicalRule rule = rule_from_json(item, domain, problem);
            rule.status = ethics::RuleStatus::Generated;
            result.rules.push_back(std::move(rule));
        } catch (const Error& e) {
            error(id, e.message());
        }
    }
    auto report = ethics::validate_rules(result.rules, domain, problem);
    result.findings.insert(result.findings.end(), report.findings.begin(), report.findings.end());
    result.ok = std::none_of(result.findings.begin(), result.findings.end(),
                             [](const ethics::Finding& f) { return f.severity == ethics::Severity::Error; });
    return result;
}

}  // namespace p2p::llm
