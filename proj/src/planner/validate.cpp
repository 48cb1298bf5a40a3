#include "p2p/planner/validate.hpp"

#include <unordered_map>

#include "p2p/common/text.hpp"

namespace p2p::planner {

PlanValidation validate_plan(const pddl::GroundTask& task, const Plan& plan) {
    std::unordered_map<std::string, std::size_t> by_label;
    for (std::size_t i = 0; i < task.actions.size(); ++i) by_label.emplace(text::to_lower(task.actions[i].label()), i);

    PlanValidation report;
    pddl::State state = task.initial_state();
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        const auto& step = plan.steps[i];
        auto it = by_label.find(text::to_lower(step.label()));
        if (it == by_label.end()) {
            report.findings.push_back({i + 1, "step " + std::to_string(i + 1) + " " + step.str() +
                                                  " is not an applicable ground action of the task", true});
            return report;
        }
        const auto& act = task.actions[it->second];
        if (!task.applicable(state, act)) {
            std::string failing;
            for (auto p : act.pre_pos)
                if (!state.test(p) && failing.empty()) failing = task.describe(p);
            for (auto p : act.pre_neg)
                if (state.test(p) && failing.empty()) failing = "(not " + task.describe(p) + ")";
            report.findings.push_back({i + 1, "step " + std::to_string(i + 1) + " " + step.str() +
                                                  ": precondition " + failing + " does not hold", true});
            return report;
        }
        for (auto p : act.del) state.reset(p);
        for (auto p : act.add) state.set(p);
        report.recomputed_cost += act.cost;
    }
    report.goal_reached = task.is_goal(state);
    if (!report.goal_reached) {
        report.findings.push_back({std::nullopt, "goal does not hold after the last step", true});
        return report;
    }
    report.valid = true;
    if (plan.total_cost && *plan.total_cost != report.recomputed_cost)
        report.findings.push_back({std::nullopt, "claimed cost " + std::to_string(*plan.total_cost) +
                                                     " differs from recomputed cost " + std::to_string(report.recomputed_cost),
                                   false});
    return report;
}

}  // namespace p2p::planner
