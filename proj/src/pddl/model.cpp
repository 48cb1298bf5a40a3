#include "p2p/pddl/model.hpp"

#include <algorithm>
#include <tuple>

#include "p2p/common/text.hpp"

namespace p2p::pddl {

bool Atom::operator<(const Atom& other) const {
    return std::tie(predicate, args) < std::tie(other.predicate, other.args);
}

std::string Atom::str() const {
    std::string out = "(" + predicate;
    for (const auto& a : args) out += " " + a;
    return out + ")";
}

bool Literal::operator<(const Literal& other) const {
    return std::tie(atom, negated) < std::tie(other.atom, other.negated);
}

std::string Literal::str() const { return negated ? "(not " + atom.str() + ")" : atom.str(); }

const TypedName* ActionSchema::find_parameter(std::string_view variable) const {
    for (const auto& p : parameters)
        if (text::iequals(p.name, variable)) return &p;
    return nullptr;
}

bool PlanningDomain::has_requirement(std::string_view flag) const {
    return std::any_of(requirements.begin(), requirements.end(),
                       [&](const std::string& r) { return text::iequals(r, flag); });
}

const ActionSchema* PlanningDomain::find_action(std::string_view n) const {
    for (const auto& a : actions)
        if (text::iequals(a.name, n)) return &a;
    return nullptr;
}

const PredicateDecl* PlanningDomain::find_predicate(std::string_view n) const {
    for (const auto& p : predicates)
        if (text::iequals(p.name, n)) return &p;
    return nullptr;
}

const TypedName* PlanningDomain::find_constant(std::string_view n) const {
    for (const auto& c : constants)
        if (text::iequals(c.name, n)) return &c;
    return nullptr;
}

bool PlanningDomain::has_type(std::string_view n) const {
    if (text::iequals(n, kRootType)) return true;
    return std::any_of(types.begin(), types.end(),
                       [&](const TypeDecl& t) { return text::iequals(t.name, n); });
}

bool PlanningDomain::is_subtype(std::string_view sub, std::string_view super) const {
    if (text::iequals(super, kRootType)) return true;
    std::string current(sub);
    // Bounded walk; the parser rejects cycles.
    for (std::size_t guard = 0; guard <= types.size(); ++guard) {
        if (text::iequals(current, super)) return true;
        if (text::iequals(current, kRootType)) return false;
        auto it = std::find_if(types.begin(), types.end(),
                               [&](const TypeDecl& t) { return text::iequals(t.name, current); });
        if (it == types.end()) return false;
        current = it->parent;
    }
    return false;
}

bool PlanningDomain::types_overlap(std::string_view a, std::string_view b) const {
    return is_subtype(a, b) || is_subtype(b, a);
}

const TypedName* PlanningProblem::find_object(std::string_view n) const {
    for (const auto& o : objects)
        if (text::iequals(o.name, n)) return &o;
    return nullptr;
}

std::string PlanStep::label() const {
    std::string out = action;
    for (const auto& a : args) out += " " + a;
    return out;
}

std::string PlanStep::str() const { return "(" + label() + ")"; }

Atom substitute(const Atom& atom, const std::vector<TypedName>& parameters,
                const std::vector<std::string>& args) {
    Atom out{atom.predicate, {}};
    out.args.reserve(atom.args.size());
    for (const auto& term : atom.args) {
        if (is_variable(term)) {
            bool bound = false;
            for (std::size_t i = 0; i < parameters.size(); ++i) {
                if (text::iequals(parameters[i].name, term)) {
                    out.args.push_back(args.at(i));
                    bound = true;
                    break;
                }
            }
            if (!bound) out.args.push_back(term);
        } else {
            out.args.push_back(term);
        }
    }
    return out;
}

}  // namespace p2p::pddl
