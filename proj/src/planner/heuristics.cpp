#include "p2p/planner/heuristics.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace p2p::planner {

RelaxedHeuristic::RelaxedHeuristic(const pddl::GroundTask& task, Combine combine)
    : task_(task), combine_(combine), consumers_(task.propositions.size()) {
    for (std::size_t a = 0; a < task.actions.size(); ++a) {
        const auto& act = task.actions[a];
        if (act.pre_pos.empty()) nullary_.push_back(a);
        for (auto p : act.pre_pos) consumers_[p].push_back(a);
    }
    prop_cost_.resize(task.propositions.size());
    action_cost_.resize(task.actions.size());
    unsatisfied_.resize(task.actions.size());
}

std::int64_t RelaxedHeuristic::evaluate(const pddl::State& state) {
    using Entry = std::pair<std::int64_t, pddl::PropId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    std::fill(prop_cost_.begin(), prop_cost_.end(), kInfiniteCost);
    std::fill(action_cost_.begin(), action_cost_.end(), 0);
    for (std::size_t a = 0; a < task_.actions.size(); ++a) unsatisfied_[a] = task_.actions[a].pre_pos.size();

    auto reach = [&](pddl::PropId p, std::int64_t c) {
        if (c < prop_cost_[p]) {
            prop_cost_[p] = c;
            queue.push({c, p});
        }
    };
    auto fire = [&](std::size_t a) {
        const auto& act = task_.actions[a];
        std::int64_t c = action_cost_[a] + act.cost;
        for (auto q : act.add) reach(q, c);
    };
    for (pddl::PropId p = 0; p < state.size(); ++p)
        if (state.test(p)) reach(p, 0);
    for (auto a : nullary_) fire(a);

    while (!queue.empty()) {
        auto [c, p] = queue.top();
        queue.pop();
        if (c > prop_cost_[p]) continue;
        for (auto a : consumers_[p]) {
            action_cost_[a] = combine_ == Combine::Max ? std::max(action_cost_[a], c) : action_cost_[a] + c;
            if (--unsatisfied_[a] == 0) fire(a);
        }
    }

    std::int64_t h = 0;
    for (auto g : task_.goal_pos) {
        if (prop_cost_[g] >= kInfiniteCost) return kInfiniteCost;
        h = combine_ == Combine::Max ? std::max(h, prop_cost_[g]) : h + prop_cost_[g];
    }
    return h;
}

}  // namespace p2p::planner
