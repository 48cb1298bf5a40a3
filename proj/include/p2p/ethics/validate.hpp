#pragma once

#include <string>
#include <vector>

#include "p2p/ethics/rules.hpp"

namespace p2p::ethics {

enum class Severity { Error, Warning };

struct Finding {
    std::string rule_id;
    Severity severity = Severity::Error;
    std::string message;

    bool operator==(const Finding&) const = default;
    std::string str() const;  // "error [r1]: message"
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool has_errors() const;
    std::size_t error_count() const;
    std::size_t warning_count() const;
};

// Total: never throws on structurally well-formed input. Errors mark broken
// rule invariants; a warning flags two rules with the same trigger, the same
// condition and a shared feature name. Constants in conditions are checked
// against the problem's objects only when `problem` is given.
ValidationReport validate_rules(const std::vector<EthicalRule>& rules, const pddl::PlanningDomain& domain,
                                const pddl::PlanningProblem* problem = nullptr);

}  // namespace p2p::ethics
