#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p2p/ethics/rules.hpp"
#include "p2p/pddl/model.hpp"
#include "p2p/transpiler/weights.hpp"

namespace p2p::transpiler {

// Every fresh identifier introduced by compilation starts with this.
inline constexpr std::string_view kFreshPrefix = "p2p--";

struct CompileOptions {
    std::size_t max_variants_per_action = 256;
};

enum class CompiledKind { Variant, Finalize, AuditYes, AuditNo };

std::string_view to_string(CompiledKind kind);

struct BackMapEntry {
    CompiledKind kind = CompiledKind::Variant;
    std::string original_action;              // variants only
    std::vector<std::string> charged_rules;   // negative rules charged by this action
    std::vector<std::string> achieved_rules;  // positive rules marked achieved
    std::string audited_rule;                 // audit actions only
    std::int64_t base_cost = 0;
    std::int64_t penalty = 0;

    bool operator==(const BackMapEntry&) const = default;
};

struct CompiledTask {
    pddl::PlanningDomain domain;
    pddl::PlanningProblem problem;
    std::map<std::string, BackMapEntry> back_map;  // compiled action name -> provenance
    std::vector<std::string> audit_actions;        // finalize first, then audit pairs in rule order
    std::vector<std::string> positive_rules;       // audit order
    WeightScheme scheme;

    const BackMapEntry* lookup(std::string_view compiled_action) const;
    // Compiled variants of one original schema, in emission order.
    std::vector<std::string> variants_of(std::string_view original_action) const;
};

// Compiles rules into plain STRIPS with action costs. Per action schema,
// rule conditions split the schema into mutually exclusive variants, each
// charging the negative-feature weights of the rules it entails. Positive
// rules set an achievement atom and are settled by a post-goal audit chain
// that charges unachieved ones. Problem objects mentioned in rule conditions
// or the goal become domain constants.
//
// Throws Validation for invalid rules, NameCollision when the task already
// uses the fresh prefix, ResourceLimit past the variant cap.
CompiledTask compile(const ethics::EthicalTask& task, const WeightScheme& scheme = {},
                     const CompileOptions& options = {});

struct ChargedStep {
    std::size_t compiled_index = 0;
    std::optional<std::size_t> original_index;  // absent for finalize/audit steps
    std::string compiled_action;
    std::vector<std::string> rule_ids;
    std::int64_t penalty = 0;

    bool operator==(const ChargedStep&) const = default;
};

struct ProjectedPlan {
    std::vector<pddl::PlanStep> steps;  // original actions only
    std::vector<ChargedStep> charges;   // one per compiled step
    std::int64_t base_cost = 0;
    std::int64_t penalty_total = 0;

    bool operator==(const ProjectedPlan&) const = default;
};

// Strips finalize/audit steps and maps variants back to their schema.
// Throws Unknown for a name not produced by compile.
ProjectedPlan project_plan(const std::vector<pddl::PlanStep>& compiled_plan, const CompiledTask& compiled);

}  // namespace p2p::transpiler
