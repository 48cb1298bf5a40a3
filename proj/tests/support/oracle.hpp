#pragma once

// Independent brute-force reference semantics over the lifted model: no
// grounding, no heuristics, states are plain atom sets.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "p2p/ethics/rules.hpp"
#include "p2p/pddl/model.hpp"

namespace oracle {

using AtomSet = std::set<p2p::pddl::Atom>;

struct Step {
    p2p::pddl::PlanStep step;
    std::int64_t cost = 0;
    AtomSet next;
};

// Every type-correct instantiation over domain constants and problem
// objects, tried against the state.
std::vector<p2p::pddl::PlanStep> all_instances(const p2p::pddl::PlanningDomain& d, const p2p::pddl::PlanningProblem& p);

bool holds(const std::vector<p2p::pddl::Literal>& lits, const AtomSet& s);
bool applicable(const p2p::pddl::ActionSchema& a, const std::vector<std::string>& args, const AtomSet& s);
AtomSet apply(const p2p::pddl::ActionSchema& a, const std::vector<std::string>& args, const AtomSet& s);

std::vector<Step> successors(const p2p::pddl::PlanningDomain& d, const std::vector<p2p::pddl::PlanStep>& instances,
                             const AtomSet& s);

AtomSet initial(const p2p::pddl::PlanningProblem& p);
bool is_goal(const p2p::pddl::PlanningProblem& p, const AtomSet& s);

// Cheapest goal cost by Dijkstra over the explicit reachable state graph.
std::optional<std::int64_t> dijkstra(const p2p::pddl::PlanningDomain& d, const p2p::pddl::PlanningProblem& p,
                                     std::size_t max_states = 2'000'000);

// Every goal-reaching action sequence with at most max_len counted steps
// (all steps count unless `counted` says otherwise; uncounted steps are
// capped at 32 per sequence).
void enumerate_plans(const p2p::pddl::PlanningDomain& d, const p2p::pddl::PlanningProblem& p, std::size_t max_len,
                     const std::function<void(const std::vector<p2p::pddl::PlanStep>&, std::int64_t cost)>& visit,
                     const std::function<bool(const p2p::pddl::PlanStep&)>& counted = nullptr);

// S * B^(r-1), computed independently of the library.
std::int64_t weight(std::int64_t scale, std::int64_t base, int rank);

struct Accounting {
    std::int64_t base = 0;
    std::int64_t penalty = 0;
};

// Replays the plan and charges rules by definition: negative features per
// firing, positive features once if their rule never fires.
Accounting account(const p2p::ethics::EthicalTask& task, const std::vector<p2p::pddl::PlanStep>& plan,
                   std::int64_t scale = 10, std::int64_t base = 100);

}  // namespace oracle
