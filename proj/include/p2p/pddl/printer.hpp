#pragma once

#include <string>
#include <vector>

#include "p2p/pddl/model.hpp"

namespace p2p::pddl {

// Deterministic; parse_domain(serialize_domain(d)) == d for valid d.
std::string serialize_domain(const PlanningDomain& domain);
std::string serialize_problem(const PlanningProblem& problem);

// "(and l1 l2)" for any count, including "(and)".
std::string serialize_conjunction(const std::vector<Literal>& literals);

}  // namespace p2p::pddl
