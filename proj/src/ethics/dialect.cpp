#include "p2p/ethics/dialect.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"
#include "p2p/pddl/parser.hpp"
#include "p2p/pddl/printer.hpp"

namespace p2p::ethics {

namespace {

using pddl::SExpr;

[[noreturn]] void fail(ErrorKind kind, const std::string& message, const SExpr& at) {
    throw Error(kind, message, at.location);
}

int parse_rank(const SExpr& e) {
    if (!e.is_symbol()) fail(ErrorKind::Syntax, "expected significance rank", e);
    int value = 0;
    auto [ptr, ec] = std::from_chars(e.text.data(), e.text.data() + e.text.size(), value);
    if (ec != std::errc() || ptr != e.text.data() + e.text.size())
        fail(ErrorKind::Syntax, "significance must be an integer, got '" + e.text + "'", e);
    if (value < kMinSignificance || value > kMaxSignificance)
        fail(ErrorKind::Range, "significance " + e.text + " outside [1,5]", e);
    return value;
}

std::vector<EthicalFeature> parse_features(const SExpr& e) {
    if (!e.is_list()) fail(ErrorKind::Syntax, "expected feature list", e);
    if (e.items.empty()) fail(ErrorKind::Syntax, "rule needs at least one feature", e);
    std::vector<EthicalFeature> out;
    std::set<std::string> names;
    for (const auto& f : e.items) {
        if (!f.is_list() || f.items.size() != 3 || !f.items[0].is_symbol() || !f.items[1].is_symbol())
            fail(ErrorKind::Syntax, "expected (<name> <positive|negative> <rank>)", f);
        auto polarity = parse_polarity(f.items[1].text);
        if (!polarity) fail(ErrorKind::Syntax, "polarity must be positive or negative, got '" + f.items[1].text + "'", f.items[1]);
        EthicalFeature feature{f.items[0].text, *polarity, parse_rank(f.items[2])};
        if (!names.insert(text::to_lower(feature.name)).second)
            fail(ErrorKind::Duplicate, "duplicate feature '" + feature.name + "'", f);
        out.push_back(std::move(feature));
    }
    return out;
}

EthicalRule parse_rule(const SExpr& e, const pddl::PlanningDomain& domain, const pddl::PlanningProblem* problem) {
    if (e.head() != "rule") fail(ErrorKind::Syntax, "expected (rule <id> ...)", e);
    if (e.items.size() < 2 || !e.items[1].is_symbol()) fail(ErrorKind::Syntax, "rule needs an identifier", e);
    EthicalRule rule;
    rule.id = e.items[1].text;
    const SExpr* condition = nullptr;
    bool have_action = false, have_features = false;
    std::set<std::string> seen;
    for (std::size_t i = 2; i < e.items.size(); i += 2) {
        const SExpr& key = e.items[i];
        if (!key.is_symbol()) fail(ErrorKind::Syntax, "expected rule keyword", key);
        if (i + 1 >= e.items.size()) fail(ErrorKind::Syntax, "missing value for '" + key.text + "'", key);
        const SExpr& value = e.items[i + 1];
        std::string k = text::to_lower(key.text);
        if (!seen.insert(k).second) fail(ErrorKind::Duplicate, "duplicate '" + key.text + "' in rule " + rule.id, key);
        auto text_value = [&]() -> std::string {
            if (!value.is_string()) fail(ErrorKind::Syntax, "expected quoted text after '" + key.text + "'", value);
            return value.text;
        };
        if (k == ":action") {
            if (!value.is_symbol()) fail(ErrorKind::Syntax, "expected action name", value);
            const auto* action = domain.find_action(value.text);
            if (!action) fail(ErrorKind::Unknown, "unknown action '" + value.text + "'", value);
            rule.trigger_action = action->name;
            have_action = true;
        } else if (k == ":condition") {
            condition = &value;
        } else if (k == ":features") {
            rule.features = parse_features(value);
            have_features = true;
        } else if (k == ":statement") {
            rule.statement = text_value();
        } else if (k == ":principle") {
            rule.principle = text_value();
        } else if (k == ":explanation") {
            rule.explanation = text_value();
        } else {
            fail(ErrorKind::Syntax, "unknown rule keyword '" + key.text + "'", key);
        }
    }
    if (!have_action) fail(ErrorKind::Syntax, "rule " + rule.id + " has no :action", e);
    if (!have_features) fail(ErrorKind::Syntax, "rule " + rule.id + " has no :features", e);
    if (condition) {
        pddl::ConditionScope scope{&domain, domain.find_action(rule.trigger_action), problem, problem != nullptr};
        rule.condition = pddl::parse_condition(*condition, scope);
    }
    return rule;
}

}  // namespace

std::vector<EthicalRule> parse_ethical_form(const SExpr& form, const pddl::PlanningDomain& domain,
                                            const pddl::PlanningProblem* problem) {
    if (form.head() != ":ethical-rules") fail(ErrorKind::Syntax, "expected (:ethical-rules ...)", form);
    std::vector<EthicalRule> rules;
    std::set<std::string> ids;
    for (std::size_t i = 1; i < form.items.size(); ++i) {
        EthicalRule rule = parse_rule(form.items[i], domain, problem);
        if (!ids.insert(text::to_lower(rule.id)).second)
            fail(ErrorKind::Duplicate, "duplicate rule id '" + rule.id + "'", form.items[i]);
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<EthicalRule> parse_ethical(std::string_view source, const pddl::PlanningDomain& domain,
                                       const pddl::PlanningProblem* problem) {
    auto forms = pddl::read_sexprs(source);
    const SExpr* block = nullptr;
    for (const auto& f : forms) {
        std::string h = f.head();
        if (h == ":ethical-rules") {
            if (block) fail(ErrorKind::Duplicate, "more than one (:ethical-rules ...) block", f);
            block = &f;
        } else if (h != "define") {
            fail(ErrorKind::Syntax, "expected (:ethical-rules ...)", f);
        }
    }
    if (!block) throw Error(ErrorKind::Syntax, "missing (:ethical-rules ...) block", SourceLocation{1, 1});
    return parse_ethical_form(*block, domain, problem);
}

std::string print_ethical(const std::vector<EthicalRule>& rules) {
    if (rules.empty()) return "(:ethical-rules)\n";
    std::ostringstream os;
    os << "(:ethical-rules";
    for (const auto& r : rules) {
        os << "\n  (rule " << r.id;
        os << "\n    :action " << r.trigger_action;
        if (!r.condition.empty()) os << "\n    :condition " << pddl::serialize_conjunction(r.condition);
        os << "\n    :features (";
        for (std::size_t i = 0; i < r.features.size(); ++i) {
            const auto& f = r.features[i];
            if (i) os << ' ';
            os << '(' << f.name << ' ' << to_string(f.polarity) << ' ' << f.significance << ')';
        }
        os << ')';
        if (!r.statement.empty()) os << "\n    :statement " << text::quote(r.statement);
        if (!r.principle.empty()) os << "\n    :principle " << text::quote(r.principle);
        if (!r.explanation.empty()) os << "\n    :explanation " << text::quote(r.explanation);
        os << ')';
    }
    os << ")\n";
    return os.str();
}

}  // namespace p2p::ethics
