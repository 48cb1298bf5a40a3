#include "p2p/service/comparison.hpp"

#include <algorithm>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"

namespace p2p::service {

namespace {

planner::SolveResult run_planner(const pddl::PlanningDomain& domain, const pddl::PlanningProblem& problem,
                                 const PlanningSettings& settings, std::stop_token stop, const char* which) {
    const auto ground = pddl::ground_task(domain, problem, settings.grounding);
    auto result = settings.external ? planner::solve_external(domain, problem, ground, *settings.external)
                                    : planner::solve(ground, settings.search, stop);
    switch (result.status) {
        case planner::SolveStatus::ResourceLimit:
            throw Error(ErrorKind::ResourceLimit, std::string(which) + " planner: " + result.message);
        case planner::SolveStatus::Cancelled:
            throw Error(ErrorKind::ResourceLimit, std::string(which) + " planner cancelled");
        case planner::SolveStatus::Failed:
            throw Error(ErrorKind::Validation, std::string(which) + " planner failed: " + result.message);
        default:
            break;
    }
    return result;
}

}  // namespace

std::vector<AlignedStep> align_plans(const std::vector<pddl::PlanStep>& baseline,
                                     const std::vector<pddl::PlanStep>& ethical) {
    const std::size_t n = baseline.size();
    const std::size_t m = ethical.size();
    std::vector<std::string> a(n), b(m);
    for (std::size_t i = 0; i < n; ++i) a[i] = text::to_lower(baseline[i].label());
    for (std::size_t j = 0; j < m; ++j) b[j] = text::to_lower(ethical[j].label());

    // lcs[i][j] = LCS length of suffixes a[i..], b[j..]
    std::vector<std::vector<std::size_t>> lcs(n + 1, std::vector<std::size_t>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = m; j-- > 0;)
            lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);

    std::vector<AlignedStep> out;
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        if (i < n && j < m && a[i] == b[j]) {
            out.push_back({AlignKind::Common, i, j, baseline[i].label()});
            ++i, ++j;
        } else if (i < n && (j == m || lcs[i + 1][j] >= lcs[i][j + 1])) {
            out.push_back({AlignKind::BaselineOnly, i, std::nullopt, baseline[i].label()});
            ++i;
        } else {
            out.push_back({AlignKind::EthicalOnly, std::nullopt, j, ethical[j].label()});
            ++j;
        }
    }
    return out;
}

PlanComparison plan_and_compare(const ethics::EthicalTask& task, const PlanningSettings& settings,
                                std::stop_token stop) {
    PlanComparison cmp;

    const auto compiled = transpiler::compile(task, settings.scheme);

    auto base = run_planner(task.domain, task.problem, settings, stop, "baseline");
    cmp.baseline = {base.status, base.plan, base.message};
    if (base.plan) cmp.baseline_tally = ethics::simulate_features(task, base.plan->steps, settings.scheme);

    auto eth = run_planner(compiled.domain, compiled.problem, settings, stop, "ethical");
    cmp.ethical.status = eth.status;
    cmp.ethical.message = eth.message;
    if (eth.plan) {
        const auto projected = transpiler::project_plan(eth.plan->steps, compiled);
        auto tally = ethics::simulate_features(task, projected.steps, settings.scheme);
        const std::int64_t compiled_cost = eth.plan->total_cost.value_or(projected.base_cost + projected.penalty_total);
        if (compiled_cost != tally.base_cost + tally.penalty_total)
            throw Error(ErrorKind::InvalidPlan, "compiled plan cost " + std::to_string(compiled_cost) +
                                                    " differs from base cost plus penalty " +
                                                    std::to_string(tally.base_cost + tally.penalty_total));
        planner::Plan plan = *eth.plan;
        plan.steps = projected.steps;
        plan.total_cost = compiled_cost;
        cmp.ethical.plan = std::move(plan);
        cmp.tally = std::move(tally);
        cmp.charges = projected.charges;
    }

    if (cmp.baseline.plan && cmp.ethical.plan) {
        cmp.alignment = align_plans(cmp.baseline.plan->steps, cmp.ethical.plan->steps);
        cmp.identical = std::all_of(cmp.alignment.begin(), cmp.alignment.end(),
                                    [](const AlignedStep& s) { return s.kind == AlignKind::Common; });
    }
    return cmp;
}

}  // namespace p2p::service
