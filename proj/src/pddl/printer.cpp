#include "p2p/pddl/printer.hpp"

#include <sstream>

namespace p2p::pddl {

namespace {

std::string typed_list(const std::vector<TypedName>& names, bool typed) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ' ';
        out += names[i].name;
        if (typed) out += " - " + names[i].type;
    }
    return out;
}

bool needs_typing(const PlanningDomain& d) {
    if (d.has_requirement(":typing") || !d.types.empty()) return true;
    auto any_typed = [](const std::vector<TypedName>& v) {
        for (const auto& t : v)
            if (t.type != kRootType) return true;
        return false;
    };
    if (any_typed(d.constants)) return true;
    for (const auto& p : d.predicates)
        if (any_typed(p.parameters)) return true;
    for (const auto& a : d.actions)
        if (any_typed(a.parameters)) return true;
    return false;
}

}  // namespace

std::string serialize_conjunction(const std::vector<Literal>& literals) {
    std::string out = "(and";
    for (const auto& l : literals) out += " " + l.str();
    return out + ")";
}

std::string serialize_domain(const PlanningDomain& d) {
    const bool typed = needs_typing(d);
    std::ostringstream os;
    os << "(define (domain " << d.name << ")\n";
    if (!d.requirements.empty()) {
        os << "  (:requirements";
        for (const auto& r : d.requirements) os << ' ' << r;
        os << ")\n";
    }
    if (!d.types.empty()) {
        os << "  (:types";
        for (const auto& t : d.types) os << "\n    " << t.name << " - " << t.parent;
        os << ")\n";
    }
    if (!d.constants.empty()) {
        os << "  (:constants";
        for (const auto& c : d.constants) os << "\n    " << typed_list({c}, typed);
        os << ")\n";
    }
    os << "  (:predicates";
    for (const auto& p : d.predicates) {
        os << "\n    (" << p.name;
        if (!p.parameters.empty()) os << ' ' << typed_list(p.parameters, typed);
        os << ')';
    }
    os << ")\n";
    if (d.uses_action_costs()) os << "  (:functions (total-cost) - number)\n";
    for (const auto& a : d.actions) {
        os << "\n  (:action " << a.name << '\n';
        os << "    :parameters (" << typed_list(a.parameters, typed) << ")\n";
        os << "    :precondition " << serialize_conjunction(a.precondition) << '\n';
        os << "    :effect (and";
        for (const auto& del : a.delete_effects) os << " (not " << del.str() << ')';
        for (const auto& add : a.add_effects) os << ' ' << add.str();
        if (d.uses_action_costs() && a.cost != 0) os << " (increase (total-cost) " << a.cost << ')';
        os << "))\n";
    }
    os << ")\n";
    return os.str();
}

std::string serialize_problem(const PlanningProblem& p) {
    bool typed = false;
    for (const auto& o : p.objects)
        if (o.type != kRootType) typed = true;
    std::ostringstream os;
    os << "(define (problem " << p.name << ")\n";
    os << "  (:domain " << p.domain_name << ")\n";
    os << "  (:objects";
    for (const auto& o : p.objects) os << "\n    " << typed_list({o}, typed);
    os << ")\n";
    os << "  (:init";
    if (p.metric_total_cost) os << "\n    (= (total-cost) 0)";
    for (const auto& a : p.init) os << "\n    " << a.str();
    os << ")\n";
    os << "  (:goal " << serialize_conjunction(p.goal) << ")\n";
    if (p.metric_total_cost) os << "  (:metric minimize (total-cost))\n";
    os << ")\n";
    return os.str();
}

}  // namespace p2p::pddl
