#include "p2p/ethics/validate.hpp"

#include <algorithm>
#include <set>

#include "p2p/common/text.hpp"

namespace p2p::ethics {

std::string Finding::str() const {
    std::string out = severity == Severity::Error ? "error" : "warning";
    if (!rule_id.empty()) out += " [" + rule_id + "]";
    return out + ": " + message;
}

bool ValidationReport::has_errors() const { return error_count() > 0; }

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(),
                                                  [](const Finding& f) { return f.severity == Severity::Error; }));
}

std::size_t ValidationReport::warning_count() const { return findings.size() - error_count(); }

namespace {

void check_condition(const EthicalRule& rule, const pddl::ActionSchema& action, const pddl::PlanningDomain& domain,
                     const pddl::PlanningProblem* problem, std::vector<Finding>& out) {
    auto error = [&](std::string msg) { out.push_back({rule.id, Severity::Error, std::move(msg)}); };
    for (const auto& lit : rule.condition) {
        const auto* pred = domain.find_predicate(lit.atom.predicate);
        if (!pred) {
            error("unknown predicate '" + lit.atom.predicate + "' in condition");
            continue;
        }
        if (pred->parameters.size() != lit.atom.args.size()) {
            error("arity mismatch: " + lit.atom.str() + " but '" + pred->name + "' takes " +
                  std::to_string(pred->parameters.size()) + " argument(s)");
            continue;
        }
        for (std::size_t i = 0; i < lit.atom.args.size(); ++i) {
            const std::string& term = lit.atom.args[i];
            const std::string& expected = pred->parameters[i].type;
            const pddl::TypedName* typed = nullptr;
            if (pddl::is_variable(term)) {
                typed = action.find_parameter(term);
                if (!typed) {
                    error("variable '" + term + "' is not a parameter of action '" + action.name + "'");
                    continue;
                }
            } else {
                typed = domain.find_constant(term);
                if (!typed && problem) typed = problem->find_object(term);
                if (!typed) {
                    if (problem) error("unknown object '" + term + "' in condition");
                    continue;
                }
            }
            if (!domain.types_overlap(typed->type, expected))
                error("type mismatch: '" + typed->name + "' of type '" + typed->type + "' used where '" + expected +
                      "' is expected in " + lit.atom.str());
        }
    }
}

std::vector<pddl::Literal> normalized_condition(const EthicalRule& r) {
    std::vector<pddl::Literal> c = r.condition;
    for (auto& l : c) {
        l.atom.predicate = text::to_lower(l.atom.predicate);
        for (auto& a : l.atom.args) a = text::to_lower(a);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

}  // namespace

ValidationReport validate_rules(const std::vector<EthicalRule>& rules, const pddl::PlanningDomain& domain,
                                const pddl::PlanningProblem* problem) {
    ValidationReport report;
    auto& out = report.findings;
    std::set<std::string> seen_ids;
    for (const auto& rule : rules) {
        auto error = [&](std::string msg) { out.push_back({rule.id, Severity::Error, std::move(msg)}); };
        if (rule.id.empty()) error("rule id is empty");
        else if (!seen_ids.insert(text::to_lower(rule.id)).second) error("duplicate rule id '" + rule.id + "'");

        const auto* action = domain.find_action(rule.trigger_action);
        if (!action) error("unknown action '" + rule.trigger_action + "'");
        else check_condition(rule, *action, domain, problem, out);

        if (rule.features.empty()) error("rule has no features");
        std::set<std::string> names;
        for (const auto& f : rule.features) {
            if (f.name.empty()) error("feature name is empty");
            else if (!names.insert(text::to_lower(f.name)).second) error("duplicate feature '" + f.name + "'");
            if (f.significance < kMinSignificance || f.significance > kMaxSignificance)
                error("feature '" + f.name + "' significance " + std::to_string(f.significance) + " outside [1,5]");
        }
    }
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = i + 1; j < rules.size(); ++j) {
            const auto& a = rules[i];
            const auto& b = rules[j];
            if (!text::iequals(a.trigger_action, b.trigger_action)) continue;
            if (normalized_condition(a) != normalized_condition(b)) continue;
            for (const auto& f : a.features) {
                if (b.find_feature(f.name)) {
                    out.push_back({b.id, Severity::Warning,
                                   "possible duplicate of rule '" + a.id + "' (same action, condition and feature '" +
                                       f.name + "')"});
                    break;
                }
            }
        }
    }
    return report;
}

}  // namespace p2p::ethics
