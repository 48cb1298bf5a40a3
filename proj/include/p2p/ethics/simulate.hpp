#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "p2p/ethics/rules.hpp"
#include "p2p/pddl/model.hpp"
#include "p2p/transpiler/weights.hpp"

namespace p2p::ethics {

struct FeatureCharge {
    std::string feature;
    Polarity polarity = Polarity::Negative;
    int significance = 1;
    std::int64_t weight = 0;
    std::int64_t penalty = 0;

    bool operator==(const FeatureCharge&) const = default;
};

struct RuleTally {
    std::string rule_id;
    std::int64_t firings = 0;  // occurrence count
    bool achieved = false;     // fired at least once
    std::vector<FeatureCharge> features;
    std::int64_t penalty = 0;

    bool operator==(const RuleTally&) const = default;
};

struct StepFiring {
    std::size_t step = 0;  // zero-based plan index
    std::vector<std::string> rule_ids;
    std::int64_t penalty = 0;  // negative-feature weight charged on this step

    bool operator==(const StepFiring&) const = default;
};

// Penalty = sum over negative features of weight * firings, plus the weight
// of every positive feature whose rule never fired.
struct FeatureTally {
    std::vector<RuleTally> rules;
    std::vector<StepFiring> steps;  // one entry per plan step
    std::int64_t base_cost = 0;     // sum of original action costs
    std::int64_t penalty_total = 0;

    bool operator==(const FeatureTally&) const = default;
};

// Replays `plan` from the problem's initial state. A rule fires on a step
// when the step instantiates its trigger action and its condition holds in
// the state the step is applied in. Throws InvalidPlan naming the first
// inapplicable step; goal satisfaction is not checked here.
FeatureTally simulate_features(const EthicalTask& task, const std::vector<pddl::PlanStep>& plan,
                               const transpiler::WeightScheme& scheme = {});

}  // namespace p2p::ethics
