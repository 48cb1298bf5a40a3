#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p2p/pddl/model.hpp"

namespace p2p::planner {

enum class Provenance { Internal, External };
enum class SearchMode { Optimal, Astar, Greedy };

std::string_view to_string(Provenance p);
std::string_view to_string(SearchMode m);
std::optional<SearchMode> parse_search_mode(std::string_view s);
inline bool is_optimal(SearchMode m) { return m != SearchMode::Greedy; }

struct Plan {
    std::vector<pddl::PlanStep> steps;
    // Absent when an external plan file carried no cost line.
    std::optional<std::int64_t> total_cost;
    Provenance provenance = Provenance::Internal;
    SearchMode mode = SearchMode::Optimal;
    bool optimal = true;

    bool operator==(const Plan&) const = default;
};

// Plan-file convention shared with common classical planners: one
// "(name arg*)" per line, ';' comment lines, optional "; cost = N ..." line.
// Throws Syntax with the offending line number.
Plan parse_external_plan(std::string_view text);

std::string format_plan(const Plan& plan);

}  // namespace p2p::planner
