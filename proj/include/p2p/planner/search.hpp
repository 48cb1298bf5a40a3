#pragma once

#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>

#include "p2p/pddl/grounding.hpp"
#include "p2p/planner/plan.hpp"

namespace p2p::planner {

struct SearchConfig {
    // Optimal: blind uniform-cost. Astar: h_max guided, still optimal.
    // Greedy: h_add best-first, flagged non-optimal.
    SearchMode mode = SearchMode::Optimal;
    std::uint64_t node_cap = 5'000'000;
    double time_cap_seconds = 60.0;

    bool operator==(const SearchConfig&) const = default;
};

enum class SolveStatus { Solved, Unsolvable, ResourceLimit, Cancelled, Failed };

std::string_view to_string(SolveStatus s);

struct SearchStats {
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    double seconds = 0.0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Unsolvable;
    std::optional<Plan> plan;
    SearchStats stats;
    std::string message;
};

// In optimal modes the plan has minimum total cost; ties go to fewer steps,
// then to the lexicographically smallest sequence of action labels.
// `stop` is polled between expansions.
SolveResult solve(const pddl::GroundTask& task, const SearchConfig& config = {}, std::stop_token stop = {});

}  // namespace p2p::planner
