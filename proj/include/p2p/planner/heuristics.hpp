#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "p2p/pddl/grounding.hpp"

namespace p2p::planner {

inline constexpr std::int64_t kInfiniteCost = std::numeric_limits<std::int64_t>::max() / 4;

// Delete-relaxation heuristics over a ground task. Negative preconditions
// and negative goals are ignored by the relaxation.
class RelaxedHeuristic {
public:
    enum class Combine { Max, Add };

    RelaxedHeuristic(const pddl::GroundTask& task, Combine combine);

    // kInfiniteCost when the goal is relaxed-unreachable.
    std::int64_t evaluate(const pddl::State& state);

private:
    const pddl::GroundTask& task_;
    Combine combine_;
    std::vector<std::vector<std::size_t>> consumers_;  // proposition -> actions needing it
    std::vector<std::size_t> nullary_;                 // actions without positive preconditions
    std::vector<std::int64_t> prop_cost_;
    std::vector<std::int64_t> action_cost_;
    std::vector<std::size_t> unsatisfied_;
};

}  // namespace p2p::planner
