#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "p2p/common/error.hpp"
#include "p2p/pddl/model.hpp"
#include "p2p/pddl/sexpr.hpp"

namespace p2p::pddl {

// Supported subset: typed STRIPS with negative preconditions and a single
// additive (total-cost) metric. Anything beyond it raises
// ErrorKind::Unsupported naming the construct.
//
// Keywords are case-insensitive. Identifiers are matched case-insensitively
// and every reference is rewritten to the casing of its declaration.
PlanningDomain parse_domain(std::string_view text);

struct Diagnostic {
    std::string message;
    SourceLocation location;
};

// Validates against `domain`. Non-fatal findings (a (:domain ...) name that
// differs from the domain's) are appended to `warnings` when given.
PlanningProblem parse_problem(std::string_view text, const PlanningDomain& domain,
                              std::vector<Diagnostic>* warnings = nullptr);

// Resolves names inside a condition written against one action schema.
// Constants are looked up in the domain and, when provided, the problem.
struct ConditionScope {
    const PlanningDomain* domain = nullptr;
    const ActionSchema* action = nullptr;
    const PlanningProblem* problem = nullptr;
    // When false, unknown non-variable terms are kept verbatim instead of
    // raising (used before the problem is known).
    bool require_known_constants = true;
};

// Parses `()`, a single literal, or `(and literal*)` with nested `and`s
// flattened. Canonicalizes every name through `scope`.
std::vector<Literal> parse_condition(const SExpr& expr, const ConditionScope& scope);

}  // namespace p2p::pddl
