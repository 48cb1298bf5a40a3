// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "p2p/ethics/dialect.hpp"
#include "p2p/ethics/simulate.hpp"
#include "p2p/llm/generate.hpp"
#include "p2p/llm/interchange.hpp"
#include "p2p/llm/mock_provider.hpp"
#include "p2p/pddl/grounding.hpp"
#include "p2p/pddl/parser.hpp"
#include "p2p/pddl/printer.hpp"
#include "p2p/planner/search.hpp"
#include "p2p/service/api.hpp"
#include "p2p/service/catalog.hpp"
#include "p2p/service/json_codec.hpp"
#include "p2p/service/manager.hpp"
#include "p2p/transpiler/compile.hpp"

using namespace p2p;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    std::vector<std::string> failures;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 10) failures.push_back(what);
        if (!ok && failures.size() == 10) failures.push_back("...");
    }
};

std::string labels(const std::vector<pddl::PlanStep>& plan) {
    std::string out;
    for (const auto& s : plan) out += (out.empty() ? "" : ", ") + s.label();
    return "[" + out + "]";
}

// Post-goal bookkeeping steps; everything else stands for an original action.
bool is_audit_step(const std::string& name) {
    return name == "p2p--finalize" || name.rfind("p2p--audit-", 0) == 0;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("p2p-acceptance-" + tag + "-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::unique_ptr<service::SessionManager> mock_manager(const fs::path& dir) {
    auto catalog = service::Catalog::load(fixtures::data_dir());
    auto provider = std::make_shared<llm::MockProvider>();
    service::install_fixtures(*provider, catalog);
    service::PlanningSettings planning;
    planning.search.mode = planner::SearchMode::Astar;
    return std::make_unique<service::SessionManager>(service::SessionStore(dir), std::move(catalog), provider,
                                                     planning, llm::RepairPolicy{});
}

service::Session plan_example(service::SessionManager& m, const std::string& example) {
    auto s = m.create_from_example(example);
    for (int st = 1; st <= static_cast<int>(service::Stage::Planned); ++st)
        s = m.advance(s.id, static_cast<service::Stage>(st));
    return s;
}

// 1. Every bundled domain, problem and rule file survives parse, print, parse.
void corpus_round_trip(Check& c) {
    const auto corpus = fixtures::corpus_tasks();
    std::set<std::string> areas;
    for (const auto& t : corpus) {
        auto d = pddl::parse_domain(t.domain);
        auto p = pddl::parse_problem(t.problem, d);
        auto rules = ethics::parse_ethical(t.rules, d, &p);
        auto d2 = pddl::parse_domain(pddl::serialize_domain(d));
        auto p2 = pddl::parse_problem(pddl::serialize_problem(p), d2);
        auto r2 = ethics::parse_ethical(ethics::print_ethical(rules), d2, &p2);
        c.expect(d2 == d, t.name + ": domain differs after round trip");
        c.expect(p2 == p, t.name + ": problem differs after round trip");
        c.expect(r2 == rules, t.name + ": rules differ after round trip");
        areas.insert(d.name);
    }
    c.expect(corpus.size() >= 6, "fewer than 6 bundled tasks");
    c.expect(areas.size() >= 3, "fewer than 3 bundled domains");
    c.detail = std::to_string(corpus.size()) + " tasks, " + std::to_string(areas.size()) + " domains";
}

// 2. Compiled plan cost is base cost plus penalty, and each original plan
// has exactly one compiled completion.
void cost_accounting(Check& c) {
    std::size_t compiled_plans = 0, original_plans = 0;
    for (const auto& t : fixtures::micro_tasks()) {
        auto task = fixtures::load(t);
        auto ground = pddl::ground_task(task.domain, task.problem);
        c.expect(ground.actions.size() <= 8, t.name + ": more than 8 ground actions");

        auto compiled = transpiler::compile(task);
        std::map<std::string, int> completions;
        oracle::enumerate_plans(
            compiled.domain, compiled.problem, 6,
            [&](const std::vector<pddl::PlanStep>& plan, std::int64_t cost) {
                ++compiled_plans;
                auto proj = transpiler::project_plan(plan, compiled);
                auto tally = ethics::simulate_features(task, proj.steps);
                auto acc = oracle::account(task, proj.steps);
                c.expect(cost == tally.base_cost + tally.penalty_total,
                         t.name + ": cost " + std::to_string(cost) + " != simulated for " + labels(plan));
                c.expect(cost == acc.base + acc.penalty, t.name + ": cost disagrees with oracle for " + labels(plan));
                c.expect(cost == proj.base_cost + proj.penalty_total, t.name + ": charges do not add up");
                ++completions[labels(proj.steps)];
            },
            [](const pddl::PlanStep& s) { return !is_audit_step(s.action); });

        std::size_t originals = 0;
        oracle::enumerate_plans(task.domain, task.problem, 6, [&](const std::vector<pddl::PlanStep>& plan, std::int64_t) {
            ++originals;
            auto it = completions.find(labels(plan));
            const int n = it == completions.end() ? 0 : it->second;
            c.expect(n == 1, t.name + ": " + std::to_string(n) + " completions of " + labels(plan));
        });
        c.expect(originals == completions.size(), t.name + ": compiled plans project outside the original plans");
        c.expect(originals > 0, t.name + ": no plans enumerated");
        original_plans += originals;
    }
    c.detail = std::to_string(compiled_plans) + " compiled plans, " + std::to_string(original_plans) + " original plans";
}

// 3. Exactly one variant of an applicable original action is applicable.
void variant_exclusivity(Check& c) {
    std::mt19937 rng(20240601);
    std::size_t checks = 0, violations = 0;
    for (const auto& t : fixtures::micro_tasks()) {
        auto task = fixtures::load(t);
        auto compiled = transpiler::compile(task);
        const auto instances = oracle::all_instances(task.domain, task.problem);

        std::vector<std::string> objects;
        for (const auto& o : compiled.domain.constants) objects.push_back(o.name);
        for (const auto& o : compiled.problem.objects) objects.push_back(o.name);
        std::vector<pddl::Atom> universe;
        for (const auto& pred : task.domain.predicates) {
            std::vector<std::size_t> idx(pred.parameters.size(), 0);
            while (true) {
                pddl::Atom a{pred.name, {}};
                for (auto i : idx) a.args.push_back(objects[i]);
                universe.push_back(a);
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == objects.size()) idx[k++] = 0;
                if (k == idx.size()) break;
            }
        }
        oracle::AtomSet fixed;
        for (const auto& a : compiled.problem.init)
            if (!task.domain.find_predicate(a.predicate)) fixed.insert(a);

        for (int round = 0; round < 1000; ++round) {
            oracle::AtomSet s = fixed;
            for (const auto& a : universe)
                if (rng() & 1u) s.insert(a);
            for (const auto& inst : instances) {
                const auto* schema = task.domain.find_action(inst.action);
                const bool original = oracle::applicable(*schema, inst.args, s);
                int applicable = 0;
                for (const auto& v : compiled.variants_of(inst.action))
                    applicable += oracle::applicable(*compiled.domain.find_action(v), inst.args, s) ? 1 : 0;
                ++checks;
                if (applicable != (original ? 1 : 0)) {
                    ++violations;
                    c.expect(false, t.name + ": " + std::to_string(applicable) + " variants of " + inst.label() +
                                        (original ? " (applicable)" : " (inapplicable)"));
                }
            }
        }
    }
    c.detail = std::to_string(checks) + " state/action checks, " + std::to_string(violations) + " violations";
}

// 4. Optimal search matches Dijkstra over the explicit state graph.
void planner_optimality(Check& c) {
    int solvable = 0, tasks = 0;
    for (std::uint32_t seed = 1; solvable < 12 && seed < 200; ++seed) {
        auto t = fixtures::random_strips_task(seed, 8 + static_cast<int>(seed % 5), 16);
        auto d = pddl::parse_domain(t.domain);
        auto p = pddl::parse_problem(t.problem, d);
        c.expect(d.predicates.size() <= 12, t.name + ": more than 12 propositions");
        auto expected = oracle::dijkstra(d, p);
        auto r = planner::solve(pddl::ground_task(d, p), {planner::SearchMode::Optimal});
        ++tasks;
        if (!expected) {
            c.expect(r.status == planner::SolveStatus::Unsolvable, t.name + ": expected unsolvable");
            continue;
        }
        ++solvable;
        c.expect(r.status == planner::SolveStatus::Solved && r.plan->total_cost == *expected,
                 t.name + ": cost differs from Dijkstra " + std::to_string(*expected));
    }
    c.expect(solvable >= 10, "fewer than 10 solvable random tasks");
    c.detail = std::to_string(solvable) + " solvable of " + std::to_string(tasks) + " random tasks";
}

// 5. 99 rank-2 firings beat one rank-3 firing at S=10, B=100.
void rank_dominance(Check& c) {
    auto task = fixtures::load(fixtures::dominance_task());
    auto compiled = transpiler::compile(task);
    auto r = planner::solve(pddl::ground_task(compiled.domain, compiled.problem), {planner::SearchMode::Optimal});
    c.expect(r.status == planner::SolveStatus::Solved, "no plan");
    if (r.status != planner::SolveStatus::Solved) return;
    auto proj = transpiler::project_plan(r.plan->steps, compiled);
    auto acc = oracle::account(task, proj.steps);
    c.expect(proj.steps.size() == 99, "plan has " + std::to_string(proj.steps.size()) + " steps, expected 99");
    c.expect(*r.plan->total_cost == 99 + 99000, "cost " + std::to_string(*r.plan->total_cost) + ", expected 99099");
    c.expect(acc.penalty == 99000, "oracle penalty " + std::to_string(acc.penalty));

    // the one-step alternative, priced by the oracle
    std::optional<std::int64_t> one_step;
    oracle::enumerate_plans(task.domain, task.problem, 1, [&](const auto& plan, std::int64_t) {
        auto a = oracle::account(task, plan);
        one_step = a.base + a.penalty;
    });
    c.expect(one_step && *one_step == 1 + 100000, "one-step plan not priced at 100001");
    c.detail = "cost " + std::to_string(*r.plan->total_cost) + " over " + std::to_string(proj.steps.size()) +
               " steps vs " + (one_step ? std::to_string(*one_step) : "?") + " for the single jump";
}

// 6. Hospital scenario: deterministic, shortcut only in the emergency.
void end_to_end(Check& c) {
    std::string summary;
    for (const std::string example : {"av-hospital-emergency", "av-hospital-leisure"}) {
        const bool emergency = example == "av-hospital-emergency";
        std::string docs[2];
        service::Session last;
        for (int run = 0; run < 2; ++run) {
            TempDir dir(example + "-" + std::to_string(run));
            auto m = mock_manager(dir.path);
            last = plan_example(*m, example);
            docs[run] = service::to_json(m->comparison(last.id)).dump();
        }
        c.expect(docs[0] == docs[1], example + ": comparison documents differ between runs");
        const auto& cmp = *last.comparison;
        c.expect(cmp.ethical.status == planner::SolveStatus::Solved, example + ": no ethical plan");
        if (!cmp.ethical.plan) continue;
        auto uses_shortcut = [](const std::vector<pddl::PlanStep>& plan) {
            return std::any_of(plan.begin(), plan.end(), [](const auto& s) { return s.action == "drive-shortcut"; });
        };
        c.expect(uses_shortcut(cmp.ethical.plan->steps) == emergency,
                 example + ": ethical plan " + labels(cmp.ethical.plan->steps));

        auto task = service::code_task(last);
        std::int64_t best = INT64_MAX;
        std::vector<std::vector<pddl::PlanStep>> optimal;
        oracle::enumerate_plans(task.domain, task.problem, 5, [&](const auto& plan, std::int64_t) {
            auto acc = oracle::account(task, plan);
            const auto v = acc.base + acc.penalty;
            if (v < best) best = v, optimal.clear();
            if (v == best) optimal.push_back(plan);
        });
        c.expect(!optimal.empty(), example + ": brute force found no plan");
        for (const auto& p : optimal)
            c.expect(uses_shortcut(p) == emergency, example + ": brute-force optimum " + labels(p));
        c.expect(*cmp.ethical.plan->total_cost == best, example + ": ethical cost differs from brute force " +
                                                            std::to_string(best));
        summary += (summary.empty() ? "" : "; ") + example + " " + labels(cmp.ethical.plan->steps) + " cost " +
                   std::to_string(*cmp.ethical.plan->total_cost);
    }
    c.detail = summary;
}

// 7. Repair loop.
void repair_loop(Check& c) {
    auto catalog = service::Catalog::load(fixtures::data_dir());
    const auto* e = catalog.find("av-hospital-emergency");
    auto d = pddl::parse_domain(e->domain_text);
    auto p = pddl::parse_problem(e->problem_text, d);
    const auto ctx = e->inputs().context;
    const std::string invalid = "```json\n{\"rules\": [{\"id\": \"r\", \"action\": \"teleport\", \"condition\": [], "
                                "\"features\": [{\"name\": \"f\", \"polarity\": \"negative\", \"rank\": 1}]}]}\n```";
    const std::string malformed = "I could not produce rules.";

    llm::MockProvider scripted;
    scripted.script({{invalid}, {malformed}, {e->response_text}});
    auto ok = llm::generate_rules(scripted, ctx, d, &p, "mock");
    c.expect(ok.ok, "scripted (invalid, invalid, valid) did not succeed");
    c.expect(ok.attempts == 3, "attempts " + std::to_string(ok.attempts) + ", expected 3");
    c.expect(ok.rules.size() == 3, "wrong rule count");

    llm::MockProvider stubborn;
    stubborn.script({{invalid}, {invalid}, {invalid}, {invalid}, {invalid}});
    llm::RepairPolicy policy;
    auto bad = llm::generate_rules(stubborn, ctx, d, &p, "mock", policy);
    const auto expected_findings = llm::parse_rule_response(invalid, d, &p).findings;
    c.expect(!bad.ok, "always-invalid script succeeded");
    c.expect(bad.attempts == policy.max_attempts, "attempts " + std::to_string(bad.attempts));
    c.expect(stubborn.call_count() == policy.max_attempts, "provider called " + std::to_string(stubborn.call_count()));
    c.expect(!bad.findings.empty() && bad.findings == expected_findings, "findings not preserved");
    c.detail = "success after " + std::to_string(ok.attempts) + " attempts; failure after " +
               std::to_string(bad.attempts) + " with " + std::to_string(bad.findings.size()) + " finding(s)";
}

// 8. Rule edits invalidate the comparison but not the baseline.
void invalidation(Check& c) {
    TempDir dir("invalidation");
    auto m = mock_manager(dir.path);
    service::Api api(*m);
    auto s = plan_example(*m, "av-hospital-leisure");
    const auto base = "/api/v1/sessions/" + s.id;
    const auto before = api.handle({"GET", base + "/comparison", ""});
    c.expect(before.status == 200, "comparison not available when planned");

    auto edit = api.handle({"PATCH", base + "/rules",
                            R"({"edits": [{"op": "set_significance", "rule_id": "no-unauthorised-shortcut",
                                "feature": "rule-violation", "rank": 5}]})"});
    c.expect(edit.status == 200, "edit rejected: " + edit.body);
    auto after_edit = api.handle({"GET", base + "/comparison", ""});
    c.expect(after_edit.status == 409, "comparison status " + std::to_string(after_edit.status) + " after edit");
    c.expect(after_edit.body.find("\"not-available\"") != std::string::npos, "error kind is not not-available");

    for (const char* target : {"rules-finalized", "code-generated", "code-finalized", "planned"}) {
        auto r = api.handle({"POST", base + "/advance", nlohmann::json{{"target", target}}.dump()});
        c.expect(r.status == 200, std::string("advance to ") + target + " failed: " + r.body);
    }
    auto again = api.handle({"GET", base + "/comparison", ""});
    c.expect(again.status == 200, "no comparison after re-advance");
    if (before.status == 200 && again.status == 200) {
        auto b0 = nlohmann::json::parse(before.body)["baseline"];
        auto b1 = nlohmann::json::parse(again.body)["baseline"];
        c.expect(b0 == b1, "baseline changed after rule edit");
        c.detail = "baseline " + b1["plan"]["total_cost"].dump() + " unchanged";
    }
}

struct Criterion {
    int number;
    const char* name;
    double budget_seconds;  // 0 means no runtime bound
    std::function<void(Check&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "corpus round trip", 2.0, corpus_round_trip},
        {2, "cost accounting on micro tasks", 30.0, cost_accounting},
        {3, "variant exclusivity", 0.0, variant_exclusivity},
        {4, "planner optimality", 60.0, planner_optimality},
        {5, "rank dominance", 0.0, rank_dominance},
        {6, "hospital scenario end to end", 0.0, end_to_end},
        {7, "repair loop", 0.0, repair_loop},
        {8, "downstream invalidation", 0.0, invalidation},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Check check;
        const auto start = Clock::now();
        try {
            cr.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (cr.budget_seconds > 0 && secs >= cr.budget_seconds)
            check.expect(false, "took " + std::to_string(secs) + " s, budget " + std::to_string(cr.budget_seconds));
        const bool pass = check.failures.empty();
        failed += pass ? 0 : 1;
        std::printf("criterion %d: %s  %s (%.3f s)%s%s\n", cr.number, pass ? "PASS" : "FAIL", cr.name, secs,
                    check.detail.empty() ? "" : "  ", check.detail.c_str());
        for (const auto& f : check.failures) std::printf("    %s\n", f.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
