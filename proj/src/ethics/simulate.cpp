#include "p2p/ethics/simulate.hpp"

#include <set>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"

namespace p2p::ethics {

namespace {

using pddl::Atom;

bool holds(const std::vector<pddl::Literal>& literals, const pddl::ActionSchema& schema,
           const std::vector<std::string>& args, const std::set<Atom>& state, std::string* failing = nullptr) {
    for (const auto& lit : literals) {
        Atom g = pddl::substitute(lit.atom, schema.parameters, args);
        if (state.count(g) == lit.negated) {
            if (failing) *failing = lit.negated ? "(not " + g.str() + ")" : g.str();
            return false;
        }
    }
    return true;
}

}  // namespace

FeatureTally simulate_features(const EthicalTask& task, const std::vector<pddl::PlanStep>& plan,
                               const transpiler::WeightScheme& scheme) {
    const auto& domain = task.domain;
    const auto& problem = task.problem;
    FeatureTally tally;
    for (const auto& r : task.rules) tally.rules.push_back({r.id, 0, false, {}, 0});

    std::set<Atom> state(problem.init.begin(), problem.init.end());
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const auto& step = plan[i];
        auto invalid = [&](const std::string& why) {
            throw Error(ErrorKind::InvalidPlan, "step " + std::to_string(i + 1) + " " + step.str() + ": " + why);
        };
        const auto* schema = domain.find_action(step.action);
        if (!schema) invalid("unknown action");
        if (schema->parameters.size() != step.args.size()) invalid("wrong number of arguments");
        std::vector<std::string> args;
        for (std::size_t k = 0; k < step.args.size(); ++k) {
            const auto* obj = domain.find_constant(step.args[k]);
            if (!obj) obj = problem.find_object(step.args[k]);
            if (!obj) invalid("unknown object '" + step.args[k] + "'");
            if (!domain.is_subtype(obj->type, schema->parameters[k].type))
                invalid("'" + obj->name + "' is not a " + schema->parameters[k].type);
            args.push_back(obj->name);
        }
        std::string failing;
        if (!holds(schema->precondition, *schema, args, state, &failing))
            invalid("precondition " + failing + " does not hold");

        StepFiring firing{i, {}, 0};
        for (std::size_t r = 0; r < task.rules.size(); ++r) {
            const auto& rule = task.rules[r];
            if (!text::iequals(rule.trigger_action, schema->name)) continue;
            if (!holds(rule.condition, *schema, args, state)) continue;
            auto& rt = tally.rules[r];
            ++rt.firings;
            rt.achieved = true;
            firing.rule_ids.push_back(rule.id);
            for (const auto& f : rule.features)
                if (f.polarity == Polarity::Negative) firing.penalty += transpiler::weight(scheme, f.significance);
        }
        tally.steps.push_back(std::move(firing));

        for (const auto& d : schema->delete_effects) state.erase(pddl::substitute(d, schema->parameters, args));
        for (const auto& a : schema->add_effects) state.insert(pddl::substitute(a, schema->parameters, args));
        tally.base_cost += schema->cost;
    }

    for (std::size_t r = 0; r < task.rules.size(); ++r) {
        auto& rt = tally.rules[r];
        for (const auto& f : task.rules[r].features) {
            FeatureCharge c{f.name, f.polarity, f.significance, transpiler::weight(scheme, f.significance), 0};
            c.penalty = f.polarity == Polarity::Negative ? c.weight * rt.firings : (rt.achieved ? 0 : c.weight);
            rt.penalty += c.penalty;
            rt.features.push_back(std::move(c));
        }
        tally.penalty_total += rt.penalty;
    }
    return tally;
}

}  // namespace p2p::ethics
