#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "p2p/ethics/rules.hpp"
#include "p2p/ethics/simulate.hpp"
#include "p2p/planner/external.hpp"
#include "p2p/planner/search.hpp"
#include "p2p/transpiler/compile.hpp"

namespace p2p::service {

struct PlanningSettings {
    transpiler::WeightScheme scheme;
    planner::SearchConfig search;
    pddl::GroundingOptions grounding;
    // When set, both plans come from this executable instead of the
    // internal search.
    std::optional<planner::ExternalPlannerConfig> external;
};

struct PlanOutcome {
    planner::SolveStatus status = planner::SolveStatus::Unsolvable;
    std::optional<planner::Plan> plan;
    std::string message;

    bool operator==(const PlanOutcome&) const = default;
};

enum class AlignKind { Common, BaselineOnly, EthicalOnly };

struct AlignedStep {
    AlignKind kind = AlignKind::Common;
    std::optional<std::size_t> baseline_index;
    std::optional<std::size_t> ethical_index;
    std::string label;

    bool operator==(const AlignedStep&) const = default;
};

struct PlanComparison {
    PlanOutcome baseline;
    // Projected onto original actions; total_cost is the compiled cost,
    // i.e. base cost plus penalty.
    PlanOutcome ethical;
    std::optional<ethics::FeatureTally> tally;           // of the ethical plan
    std::optional<ethics::FeatureTally> baseline_tally;  // rules replayed on the baseline
    std::vector<transpiler::ChargedStep> charges;        // per compiled step
    std::vector<AlignedStep> alignment;
    bool identical = false;

    bool operator==(const PlanComparison&) const = default;
};

// Longest-common-subsequence alignment over step labels; every step of
// both plans appears exactly once.
std::vector<AlignedStep> align_plans(const std::vector<pddl::PlanStep>& baseline,
                                     const std::vector<pddl::PlanStep>& ethical);

// Solves the original task (baseline) and the compiled task (ethical) with
// the same planner settings. Throws ResourceLimit when either search runs
// out of budget, Validation when the rules are invalid.
PlanComparison plan_and_compare(const ethics::EthicalTask& task, const PlanningSettings& settings,
                                std::stop_token stop = {});

}  // namespace p2p::service
