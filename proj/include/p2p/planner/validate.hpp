#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "p2p/pddl/grounding.hpp"
#include "p2p/planner/plan.hpp"

namespace p2p::planner {

struct PlanFinding {
    std::optional<std::size_t> step;  // 1-based
    std::string message;
    bool fatal = true;
};

struct PlanValidation {
    bool valid = false;
    bool goal_reached = false;
    std::int64_t recomputed_cost = 0;  // over the applicable prefix
    std::vector<PlanFinding> findings;
};

// Replays the plan from the initial state with apply_action semantics and
// recomputes its cost. A claimed cost that disagrees is reported as a
// non-fatal finding. Step names match ground actions case-insensitively.
PlanValidation validate_plan(const pddl::GroundTask& task, const Plan& plan);

}  // namespace p2p::planner
