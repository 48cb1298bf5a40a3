#include "p2p/transpiler/compile.hpp"

#include <algorithm>
#include <set>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"
#include "p2p/ethics/validate.hpp"

namespace p2p::transpiler {

using ethics::EthicalRule;
using ethics::Polarity;
using pddl::Atom;
using pddl::Literal;

std::string_view to_string(CompiledKind kind) {
    switch (kind) {
    case CompiledKind::Variant: return "variant";
    case CompiledKind::Finalize: return "finalize";
    case CompiledKind::AuditYes: return "audit-yes";
    case CompiledKind::AuditNo: return "audit-no";
    }
    return "variant";
}

const BackMapEntry* CompiledTask::lookup(std::string_view name) const {
    auto it = back_map.find(std::string(name));
    if (it != back_map.end()) return &it->second;
    for (const auto& [key, entry] : back_map)
        if (text::iequals(key, name)) return &entry;
    return nullptr;
}

std::vector<std::string> CompiledTask::variants_of(std::string_view original) const {
    std::vector<std::string> out;
    for (const auto& a : domain.actions) {
        const auto* e = lookup(a.name);
        if (e && e->kind == CompiledKind::Variant && text::iequals(e->original_action, original)) out.push_back(a.name);
    }
    return out;
}

namespace {

std::string fresh(std::string_view suffix) { return std::string(kFreshPrefix) + std::string(suffix); }

bool contains(const std::vector<Literal>& cell, const Literal& l) {
    return std::find(cell.begin(), cell.end(), l) != cell.end();
}

// Exclusive partition over the distinct rule conditions. Each condition
// either holds in full or fails at its first literal not already decided by
// the cell; a condition contradicted by the cell needs no split.
class Partitioner {
public:
    Partitioner(const std::vector<std::vector<Literal>>& conditions, std::size_t cap, const std::string& action)
        : conditions_(conditions), cap_(cap), action_(action) {}

    std::vector<std::vector<Literal>> run(std::vector<Literal> cell) {
        next_condition(std::move(cell), 0);
        return std::move(cells_);
    }

private:
    void next_condition(std::vector<Literal> cell, std::size_t j) {
        if (j == conditions_.size()) {
            cells_.push_back(std::move(cell));
            if (cells_.size() > cap_)
                throw Error(ErrorKind::ResourceLimit, "action '" + action_ + "' needs more than " +
                                                          std::to_string(cap_) + " compiled variants");
            return;
        }
        walk(std::move(cell), j, 0);
    }

    void walk(std::vector<Literal> cell, std::size_t j, std::size_t idx) {
        const auto& cond = conditions_[j];
        while (idx < cond.size() && contains(cell, cond[idx])) ++idx;
        if (idx == cond.size()) {
            next_condition(std::move(cell), j + 1);
            return;
        }
        const Literal& l = cond[idx];
        if (contains(cell, l.complement())) {
            next_condition(std::move(cell), j + 1);
            return;
        }
        auto failed = cell;
        failed.push_back(l.complement());
        next_condition(std::move(failed), j + 1);
        cell.push_back(l);
        walk(std::move(cell), j, idx + 1);
    }

    const std::vector<std::vector<Literal>>& conditions_;
    std::size_t cap_;
    std::string action_;
    std::vector<std::vector<Literal>> cells_;
};

bool entails(const std::vector<Literal>& cell, const std::vector<Literal>& condition) {
    return std::all_of(condition.begin(), condition.end(), [&](const Literal& l) { return contains(cell, l); });
}

std::int64_t negative_weight(const EthicalRule& r, const WeightScheme& s) {
    std::int64_t w = 0;
    for (const auto& f : r.features)
        if (f.polarity == Polarity::Negative) w += weight(s, f.significance);
    return w;
}

std::int64_t positive_weight(const EthicalRule& r, const WeightScheme& s) {
    std::int64_t w = 0;
    for (const auto& f : r.features)
        if (f.polarity == Polarity::Positive) w += weight(s, f.significance);
    return w;
}

void check_collisions(const ethics::EthicalTask& task) {
    auto check = [](std::string_view name, std::string_view what) {
        if (text::istarts_with(name, kFreshPrefix))
            throw Error(ErrorKind::NameCollision, std::string(what) + " '" + std::string(name) +
                                                      "' uses the reserved prefix '" + std::string(kFreshPrefix) + "'");
    };
    const auto& d = task.domain;
    for (const auto& t : d.types) check(t.name, "type");
    for (const auto& c : d.constants) check(c.name, "constant");
    for (const auto& p : d.predicates) check(p.name, "predicate");
    for (const auto& a : d.actions) check(a.name, "action");
    for (const auto& o : task.problem.objects) check(o.name, "object");
    for (const auto& r : task.rules) check(r.id, "rule");
}

}  // namespace

CompiledTask compile(const ethics::EthicalTask& task, const WeightScheme& scheme, const CompileOptions& options) {
    validate_scheme(scheme);
    auto report = ethics::validate_rules(task.rules, task.domain, &task.problem);
    if (report.has_errors()) {
        std::vector<std::string> lines;
        for (const auto& f : report.findings)
            if (f.severity == ethics::Severity::Error) lines.push_back(f.str());
        throw Error(ErrorKind::Validation, "cannot compile invalid rules: " + text::join(lines, "; "));
    }
    check_collisions(task);

    const auto& src = task.domain;
    const auto& prob = task.problem;
    CompiledTask out;
    out.scheme = scheme;
    auto& dom = out.domain;
    dom.name = src.name;
    dom.requirements = src.requirements;
    dom.types = src.types;
    dom.constants = src.constants;
    dom.predicates = src.predicates;

    // Objects referenced by rule conditions or the goal must be visible to
    // the domain's action schemas.
    std::vector<std::string> promoted;
    auto promote = [&](const std::string& term) {
        if (pddl::is_variable(term) || src.find_constant(term)) return;
        const auto* obj = prob.find_object(term);
        if (!obj || std::find(promoted.begin(), promoted.end(), obj->name) != promoted.end()) return;
        promoted.push_back(obj->name);
        dom.constants.push_back(*obj);
    };
    for (const auto& r : task.rules)
        for (const auto& l : r.condition)
            for (const auto& t : l.atom.args) promote(t);
    for (const auto& l : prob.goal)
        for (const auto& t : l.atom.args) promote(t);

    const Literal planning_mode{{fresh("planning-mode"), {}}, false};
    std::vector<const EthicalRule*> positives;
    for (const auto& r : task.rules)
        if (r.has_positive()) positives.push_back(&r);
    auto achieved_atom = [](const EthicalRule& r) { return Atom{fresh("achieved-" + r.id), {}}; };
    auto token_atom = [](std::size_t j) { return Atom{fresh("audit-token-" + std::to_string(j)), {}}; };

    dom.predicates.push_back({planning_mode.atom.predicate, {}});
    for (const auto* r : positives) dom.predicates.push_back({achieved_atom(*r).predicate, {}});
    for (std::size_t j = 0; j <= positives.size(); ++j) dom.predicates.push_back({token_atom(j).predicate, {}});

    bool uses_negation = !positives.empty();
    for (const auto& l : prob.goal) uses_negation = uses_negation || l.negated;

    for (const auto& action : src.actions) {
        std::vector<const EthicalRule*> rules;
        for (const auto& r : task.rules)
            if (text::iequals(r.trigger_action, action.name)) rules.push_back(&r);

        std::vector<std::vector<Literal>> conditions;
        std::vector<std::vector<Literal>> seen_sorted;
        for (const auto* r : rules) {
            if (r->condition.empty()) continue;
            auto key = r->condition;
            std::sort(key.begin(), key.end());
            key.erase(std::unique(key.begin(), key.end()), key.end());
            if (std::find(seen_sorted.begin(), seen_sorted.end(), key) != seen_sorted.end()) continue;
            seen_sorted.push_back(key);
            conditions.push_back(r->condition);
        }

        auto cells = Partitioner(conditions, options.max_variants_per_action, action.name).run(action.precondition);
        for (std::size_t k = 0; k < cells.size(); ++k) {
            const auto& cell = cells[k];
            pddl::ActionSchema variant = action;
            variant.name = cells.size() == 1 ? action.name : fresh(action.name + "--" + std::to_string(k + 1));
            variant.precondition = cell;
            variant.precondition.push_back(planning_mode);
            BackMapEntry entry;
            entry.kind = CompiledKind::Variant;
            entry.original_action = action.name;
            entry.base_cost = action.cost;
            for (const auto* r : rules) {
                if (!entails(cell, r->condition)) continue;
                if (r->has_negative()) {
                    entry.charged_rules.push_back(r->id);
                    entry.penalty += negative_weight(*r, scheme);
                }
                if (r->has_positive()) {
                    entry.achieved_rules.push_back(r->id);
                    variant.add_effects.push_back(achieved_atom(*r));
                }
            }
            for (const auto& l : variant.precondition) uses_negation = uses_negation || l.negated;
            variant.cost = entry.base_cost + entry.penalty;
            out.back_map.emplace(variant.name, std::move(entry));
            dom.actions.push_back(std::move(variant));
        }
    }

    pddl::ActionSchema finalize;
    finalize.name = fresh("finalize");
    finalize.precondition = prob.goal;
    finalize.precondition.push_back(planning_mode);
    finalize.delete_effects = {planning_mode.atom};
    finalize.add_effects = {token_atom(0)};
    finalize.cost = 0;
    out.back_map.emplace(finalize.name, BackMapEntry{CompiledKind::Finalize, {}, {}, {}, {}, 0, 0});
    out.audit_actions.push_back(finalize.name);
    dom.actions.push_back(std::move(finalize));

    for (std::size_t j = 1; j <= positives.size(); ++j) {
        const EthicalRule& r = *positives[j - 1];
        out.positive_rules.push_back(r.id);
        for (bool yes : {true, false}) {
            pddl::ActionSchema audit;
            audit.name = fresh("audit-" + std::to_string(j) + (yes ? "-yes" : "-no"));
            audit.precondition = {{token_atom(j - 1), false}, {achieved_atom(r), !yes}};
            audit.delete_effects = {token_atom(j - 1)};
            audit.add_effects = {token_atom(j)};
            BackMapEntry entry;
            entry.kind = yes ? CompiledKind::AuditYes : CompiledKind::AuditNo;
            entry.audited_rule = r.id;
            entry.penalty = yes ? 0 : positive_weight(r, scheme);
            audit.cost = entry.penalty;
            if (!yes) entry.charged_rules.push_back(r.id);
            out.back_map.emplace(audit.name, std::move(entry));
            out.audit_actions.push_back(audit.name);
            dom.actions.push_back(std::move(audit));
        }
    }

    if (!dom.has_requirement(":action-costs")) dom.requirements.push_back(":action-costs");
    if (uses_negation && !dom.has_requirement(":negative-preconditions"))
        dom.requirements.push_back(":negative-preconditions");

    auto& cp = out.problem;
    cp.name = prob.name;
    cp.domain_name = dom.name;
    for (const auto& o : prob.objects)
        if (std::find(promoted.begin(), promoted.end(), o.name) == promoted.end()) cp.objects.push_back(o);
    cp.init = prob.init;
    cp.init.push_back(planning_mode.atom);
    cp.goal = {{token_atom(positives.size()), false}};
    cp.metric_total_cost = true;
    return out;
}

ProjectedPlan project_plan(const std::vector<pddl::PlanStep>& compiled_plan, const CompiledTask& compiled) {
    ProjectedPlan out;
    for (std::size_t i = 0; i < compiled_plan.size(); ++i) {
        const auto& step = compiled_plan[i];
        const auto* entry = compiled.lookup(step.action);
        if (!entry) throw Error(ErrorKind::Unknown, "unknown compiled action '" + step.action + "' at step " + std::to_string(i + 1));
        ChargedStep charge;
        charge.compiled_index = i;
        charge.compiled_action = step.action;
        charge.rule_ids = entry->charged_rules;
        charge.penalty = entry->penalty;
        if (entry->kind == CompiledKind::Variant) {
            charge.original_index = out.steps.size();
            out.steps.push_back({entry->original_action, step.args});
            out.base_cost += entry->base_cost;
        }
        out.penalty_total += entry->penalty;
        out.charges.push_back(std::move(charge));
    }
    return out;
}

}  // namespace p2p::transpiler
