#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "p2p/pddl/grounding.hpp"
#include "p2p/pddl/model.hpp"
#include "p2p/planner/search.hpp"

namespace p2p::planner {

// Runs a planner executable over serialized task files. Argument
// placeholders {domain}, {problem} and {plan} expand to file paths.
// Exit status 0 with a plan file means solved; the plan is validated
// against the ground task and its cost recomputed.
struct ExternalPlannerConfig {
    std::string executable;
    std::vector<std::string> arguments{"{domain}", "{problem}", "{plan}"};
    std::chrono::milliseconds timeout{std::chrono::seconds(60)};
    // Exit statuses meaning "proved unsolvable" / "ran out of resources".
    std::vector<int> unsolvable_exit_codes{10, 11, 12};
    std::vector<int> resource_exit_codes{20, 21, 22, 23};
};

SolveResult solve_external(const pddl::PlanningDomain& domain, const pddl::PlanningProblem& problem,
                           const pddl::GroundTask& task, const ExternalPlannerConfig& config);

}  // namespace p2p::planner
