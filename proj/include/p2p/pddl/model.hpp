#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace p2p::pddl {

inline constexpr std::string_view kRootType = "object";

struct TypedName {
    std::string name;
    std::string type{kRootType};
    bool operator==(const TypedName&) const = default;
};

// Arguments beginning with '?' are variables; anything else is a constant.
struct Atom {
    std::string predicate;
    std::vector<std::string> args;

    bool operator==(const Atom&) const = default;
    bool operator<(const Atom& other) const;
    std::string str() const;  // "(pred a b)"
};

struct Literal {
    Atom atom;
    bool negated = false;

    bool operator==(const Literal&) const = default;
    bool operator<(const Literal& other) const;
    Literal complement() const { return {atom, !negated}; }
    std::string str() const;  // "(pred a)" or "(not (pred a))"
};

inline bool is_variable(std::string_view term) { return !term.empty() && term.front() == '?'; }

struct TypeDecl {
    std::string name;
    std::string parent{kRootType};
    bool operator==(const TypeDecl&) const = default;
};

struct PredicateDecl {
    std::string name;
    std::vector<TypedName> parameters;
    bool operator==(const PredicateDecl&) const = default;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> parameters;
    std::vector<Literal> precondition;
    std::vector<Atom> add_effects;
    std::vector<Atom> delete_effects;
    std::int64_t cost = 1;

    bool operator==(const ActionSchema&) const = default;
    const TypedName* find_parameter(std::string_view variable) const;
};

struct PlanningDomain {
    std::string name;
    // Lowercased requirement flags including the leading colon, first-seen order.
    std::vector<std::string> requirements;
    std::vector<TypeDecl> types;
    std::vector<TypedName> constants;
    std::vector<PredicateDecl> predicates;
    std::vector<ActionSchema> actions;

    bool operator==(const PlanningDomain&) const = default;

    bool has_requirement(std::string_view flag) const;
    bool uses_action_costs() const { return has_requirement(":action-costs"); }
    // Lookups are case-insensitive.
    const ActionSchema* find_action(std::string_view name) const;
    const PredicateDecl* find_predicate(std::string_view name) const;
    const TypedName* find_constant(std::string_view name) const;
    bool has_type(std::string_view name) const;
    // Reflexive, transitive; every type is a subtype of "object".
    bool is_subtype(std::string_view sub, std::string_view super) const;
    // Types are compatible when one is a subtype of the other.
    bool types_overlap(std::string_view a, std::string_view b) const;
};

struct PlanningProblem {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<Atom> init;
    std::vector<Literal> goal;
    // Problem declares the (total-cost) metric.
    bool metric_total_cost = false;

    bool operator==(const PlanningProblem&) const = default;

    const TypedName* find_object(std::string_view name) const;
};

// One step of a plan at the lifted level: schema name plus object arguments.
struct PlanStep {
    std::string action;
    std::vector<std::string> args;

    bool operator==(const PlanStep&) const = default;
    std::string label() const;  // "drive a b"
    std::string str() const;    // "(drive a b)"
};

// Substitutes variables through a parameter binding; constants pass through.
Atom substitute(const Atom& atom, const std::vector<TypedName>& parameters,
                const std::vector<std::string>& args);

}  // namespace p2p::pddl
