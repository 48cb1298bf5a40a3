#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "p2p/pddl/model.hpp"
#include "p2p/pddl/state.hpp"

namespace p2p::pddl {

struct GroundAction {
    std::string schema;
    std::vector<std::string> args;
    std::vector<PropId> pre_pos;
    std::vector<PropId> pre_neg;
    std::vector<PropId> add;
    std::vector<PropId> del;  // never intersects add
    std::int64_t cost = 0;

    bool operator==(const GroundAction&) const = default;
    std::string label() const;  // "drive a b"
    PlanStep step() const { return {schema, args}; }
};

struct GroundTask {
    std::vector<Atom> propositions;
    std::map<Atom, PropId> index;
    std::vector<PropId> init;
    std::vector<PropId> goal_pos;
    std::vector<PropId> goal_neg;
    std::vector<GroundAction> actions;

    bool operator==(const GroundTask&) const = default;

    std::optional<PropId> find(const Atom& atom) const;
    State initial_state() const;
    bool is_goal(const State& s) const;
    bool applicable(const State& s, const GroundAction& a) const;
    std::string describe(PropId p) const { return propositions.at(p).str(); }
};

struct GroundingOptions {
    bool prune_static_preconditions = true;
    std::size_t max_ground_actions = 200'000;
    // 0 lets the runtime decide.
    int threads = 0;
};

// Predicates that never occur in any action effect.
std::vector<std::string> static_predicates(const PlanningDomain& domain);

// Type-correct instantiation of every schema over domain constants and
// problem objects. Runs the per-schema enumeration in parallel; the result
// is identical to reference::ground_task_serial.
GroundTask ground_task(const PlanningDomain& domain, const PlanningProblem& problem,
                       const GroundingOptions& options = {});

// Successor function: (state \ del) ∪ add. Throws PreconditionViolated
// naming the first failing literal.
State apply_action(const GroundTask& task, const State& state, const GroundAction& action);

namespace reference {

// Single-threaded instantiate-then-filter grounding kept for tests and
// benchmarks.
GroundTask ground_task_serial(const PlanningDomain& domain, const PlanningProblem& problem,
                              const GroundingOptions& options = {});

}  // namespace reference

}  // namespace p2p::pddl
