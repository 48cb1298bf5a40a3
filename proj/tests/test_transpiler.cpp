#include <doctest.h>

#include <algorithm>
#include <map>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "p2p/ethics/dialect.hpp"
#include "p2p/ethics/simulate.hpp"
#include "p2p/pddl/grounding.hpp"
#include "p2p/pddl/parser.hpp"
#include "p2p/pddl/printer.hpp"
#include "p2p/planner/search.hpp"
#include "p2p/transpiler/compile.hpp"

using namespace p2p;
using namespace p2p::transpiler;

namespace {

const char* kDomain = R"(
(define (domain lamp)
  (:requirements :strips :typing :negative-preconditions)
  (:types switch)
  (:predicates (c1 ?s - switch) (c2) (on ?s - switch))
  (:action press :parameters (?s - switch) :precondition (not (on ?s)) :effect (on ?s)))
)";

const char* kProblem = R"(
(define (problem lamp-1) (:domain lamp) (:objects s - switch) (:init) (:goal (on s)))
)";

ethics::EthicalTask lamp_task(const std::string& rules) {
    auto d = pddl::parse_domain(kDomain);
    auto p = pddl::parse_problem(kProblem, d);
    auto r = ethics::parse_ethical(rules, d, &p);
    return ethics::make_ethical_task(d, p, r);
}

std::int64_t optimal_cost(const pddl::PlanningDomain& d, const pddl::PlanningProblem& p) {
    auto result = planner::solve(pddl::ground_task(d, p));
    REQUIRE(result.status == planner::SolveStatus::Solved);
    return *result.plan->total_cost;
}

}  // namespace

TEST_CASE("no rules only wraps the task") {
    auto task = lamp_task("(:ethical-rules)");
    auto c = compile(task);
    CHECK(c.variants_of("press") == std::vector<std::string>{"press"});
    CHECK(c.audit_actions == std::vector<std::string>{"p2p--finalize"});
    CHECK(c.domain.actions.size() == 2);
    CHECK(optimal_cost(c.domain, c.problem) == optimal_cost(task.domain, task.problem));
}

TEST_CASE("unconditional negative rank-2 rule gives one charged variant") {
    auto c = compile(lamp_task("(:ethical-rules (rule r :action press :features ((harm negative 2))))"));
    REQUIRE(c.variants_of("press") == std::vector<std::string>{"press"});
    const auto* a = c.domain.find_action("press");
    CHECK(a->cost == 1 + 1000);
    CHECK(c.lookup("press")->charged_rules == std::vector<std::string>{"r"});
}

TEST_CASE("two-literal condition splits into three exclusive variants") {
    auto c = compile(lamp_task("(:ethical-rules (rule r :action press :condition (and (c1 ?s) (c2)) "
                               ":features ((harm negative 1))))"));
    const auto names = c.variants_of("press");
    REQUIRE(names.size() == 3);
    std::map<std::string, std::int64_t> by_cell;
    for (const auto& n : names) {
        const auto* a = c.domain.find_action(n);
        std::string key;
        for (const auto& l : a->precondition)
            if (l.atom.predicate == "c1" || l.atom.predicate == "c2") key += (l.negated ? "!" : "") + l.atom.predicate + " ";
        by_cell[key] = c.lookup(n)->penalty;
    }
    CHECK(by_cell == std::map<std::string, std::int64_t>{{"c1 c2 ", 10}, {"c1 !c2 ", 0}, {"!c1 ", 0}});
    for (const auto& n : names) CHECK(n.rfind("p2p--press--", 0) == 0);
}

TEST_CASE("compiled tasks serialize and reparse") {
    for (const auto& t : fixtures::corpus_tasks()) {
        CAPTURE(t.name);
        auto c = compile(fixtures::load(t));
        auto d = pddl::parse_domain(pddl::serialize_domain(c.domain));
        CHECK(d == c.domain);
        CHECK(pddl::parse_problem(pddl::serialize_problem(c.problem), d) == c.problem);
    }
}

TEST_CASE("name collisions with the fresh prefix are rejected") {
    auto d = pddl::parse_domain("(define (domain d) (:predicates (p2p--x)) (:action a :parameters () :effect (p2p--x)))");
    auto p = pddl::parse_problem("(define (problem q) (:domain d) (:init) (:goal (p2p--x)))", d);
    try {
        compile(ethics::make_ethical_task(d, p, {}));
        FAIL("expected collision");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NameCollision);
    }
}

TEST_CASE("variant cap") {
    CompileOptions o;
    o.max_variants_per_action = 2;
    auto task = lamp_task("(:ethical-rules (rule r :action press :condition (and (c1 ?s) (c2)) "
                          ":features ((harm negative 1))))");
    CHECK_THROWS_AS(compile(task, {}, o), Error);
}

TEST_CASE("project_plan") {
    auto c = compile(lamp_task("(:ethical-rules (rule r :action press :features ((care positive 1))))"));

    SUBCASE("finalize and audit only") {
        auto proj = project_plan({{"p2p--finalize", {}}, {"p2p--audit-1-no", {}}}, c);
        CHECK(proj.steps.empty());
        CHECK(proj.penalty_total == 10);
        CHECK(proj.charges.size() == 2);
        CHECK_FALSE(proj.charges[0].original_index);
    }
    SUBCASE("unknown names are rejected") { CHECK_THROWS_AS(project_plan({{"fly", {}}}, c), Error); }
}

TEST_CASE("bundled plans map back and charges add up") {
    for (const auto& t : fixtures::corpus_tasks()) {
        CAPTURE(t.name);
        auto task = fixtures::load(t);
        auto c = compile(task);
        auto result = planner::solve(pddl::ground_task(c.domain, c.problem));
        REQUIRE(result.status == planner::SolveStatus::Solved);
        auto proj = project_plan(result.plan->steps, c);
        for (const auto& s : proj.steps) CHECK(task.domain.find_action(s.action) != nullptr);

        std::int64_t charged = 0;
        for (const auto& ch : proj.charges) charged += ch.penalty;
        CHECK(charged == *result.plan->total_cost - proj.base_cost);

        auto tally = ethics::simulate_features(task, proj.steps);
        CHECK(tally.base_cost + tally.penalty_total == *result.plan->total_cost);
        auto acc = oracle::account(task, proj.steps);
        CHECK(acc.base + acc.penalty == *result.plan->total_cost);
    }
}

TEST_CASE("compiled optimum equals the brute-force ethical optimum on micro tasks") {
    for (const auto& t : fixtures::micro_tasks()) {
        CAPTURE(t.name);
        auto task = fixtures::load(t);
        std::optional<std::int64_t> best;
        oracle::enumerate_plans(task.domain, task.problem, 6, [&](const auto& plan, std::int64_t) {
            auto acc = oracle::account(task, plan);
            if (!best || acc.base + acc.penalty < *best) best = acc.base + acc.penalty;
        });
        REQUIRE(best);
        auto c = compile(task);
        CHECK(optimal_cost(c.domain, c.problem) == *best);
        CHECK(oracle::dijkstra(c.domain, c.problem) == best);
    }
}

TEST_CASE("hospital micro-domain takes the shortcut only in an emergency") {
    auto road = fixtures::micro_tasks()[0];
    for (bool urgent : {true, false}) {
        CAPTURE(urgent);
        auto t = road;
        if (urgent) t.problem.replace(t.problem.find("(at a)"), 6, "(at a) (urgent)");
        auto task = fixtures::load(t);
        // brute force: do all cheapest plans use the unauthorised road?
        std::int64_t best = INT64_MAX;
        std::vector<std::vector<pddl::PlanStep>> optimal;
        oracle::enumerate_plans(task.domain, task.problem, 6, [&](const auto& plan, std::int64_t) {
            auto acc = oracle::account(task, plan);
            const auto v = acc.base + acc.penalty;
            if (v < best) best = v, optimal.clear();
            if (v == best) optimal.push_back(plan);
        });
        auto uses_cut = [](const auto& plan) {
            return std::any_of(plan.begin(), plan.end(), [](auto& s) { return s.action == "cut"; });
        };
        for (const auto& p : optimal) CHECK(uses_cut(p) == urgent);

        auto c = compile(task);
        auto result = planner::solve(pddl::ground_task(c.domain, c.problem));
        REQUIRE(result.status == planner::SolveStatus::Solved);
        CHECK(*result.plan->total_cost == best);
        CHECK(uses_cut(project_plan(result.plan->steps, c).steps) == urgent);
    }
}
