#include <doctest.h>

#include <httplib.h>

#include <nlohmann/json.hpp>
#include <thread>

#include "fixtures.hpp"
#include "p2p/ethics/dialect.hpp"
#include "p2p/llm/digest.hpp"
#include "p2p/llm/generate.hpp"
#include "p2p/llm/http_provider.hpp"
#include "p2p/llm/interchange.hpp"
#include "p2p/llm/mock_provider.hpp"
#include "p2p/llm/prompt.hpp"
#include "p2p/pddl/parser.hpp"
#include "p2p/service/catalog.hpp"

using namespace p2p;
using namespace p2p::llm;

namespace {

const service::Catalog& catalog() {
    static const auto c = service::Catalog::load(fixtures::data_dir());
    return c;
}

struct Av {
    const service::CatalogEntry* entry;
    pddl::PlanningDomain domain;
    pddl::PlanningProblem problem;
    RuleGenerationContext ctx;
};

Av av(const char* id = "av-hospital-emergency") {
    Av a;
    a.entry = catalog().find(id);
    REQUIRE(a.entry);
    a.domain = pddl::parse_domain(a.entry->domain_text);
    a.problem = pddl::parse_problem(a.entry->problem_text, a.domain);
    a.ctx = a.entry->inputs().context;
    return a;
}

std::string fenced(const nlohmann::json& j) { return "Sure.\n```json\n" + j.dump(2) + "\n```\n"; }

nlohmann::json one_rule(const std::string& action) {
    return {{"rules",
             {{{"id", "r1"},
               {"action", action},
               {"condition", {"(not (emergency))"}},
               {"features", {{{"name", "rule-violation"}, {"polarity", "negative"}, {"rank", 2}}}},
               {"statement", "s"},
               {"principle", "p"},
               {"explanation", "e"}}}}};
}

}  // namespace

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("rule prompt is deterministic and carries the inputs") {
    auto a = av();
    auto p1 = build_rule_prompt(a.ctx, "m1");
    auto p2 = build_rule_prompt(a.ctx, "m1");
    CHECK(p1 == p2);
    CHECK(p1.model == "m1");
    CHECK(p1.temperature == 0.0);
    for (const auto& principle : a.ctx.principles) CHECK(p1.user_content.find(principle) != std::string::npos);
    CHECK(p1.user_content.find(a.ctx.domain_text) != std::string::npos);
    CHECK(p1.user_content.find(a.ctx.problem_text) != std::string::npos);
    CHECK(p1.user_content.find(a.ctx.initial_state_notes) != std::string::npos);
    CHECK(p1.user_content.find(a.ctx.assumptions) != std::string::npos);
    CHECK(estimate_tokens(p1.system_instructions + p1.user_content) <= kDefaultContextBudget);

    auto other = a.ctx;
    other.principles.push_back("justice");
    CHECK_FALSE(build_rule_prompt(other, "m1") == p1);
}

TEST_CASE("context needs a principle") {
    RuleGenerationContext ctx;
    ctx.domain_text = "(define (domain d))";
    CHECK_THROWS_AS(validate_context(ctx), Error);
    ctx.principles = {"  "};
    CHECK_THROWS_AS(validate_context(ctx), Error);
    ctx.principles = {"privacy"};
    CHECK_NOTHROW(validate_context(ctx));
}

TEST_CASE("parse_rule_response") {
    auto a = av();
    auto r = parse_rule_response(fenced(one_rule("drive-shortcut")), a.domain, &a.problem);
    CHECK(r.ok);
    REQUIRE(r.rules.size() == 1);
    CHECK(r.rules[0].trigger_action == "drive-shortcut");
    CHECK(r.rules[0].explanation == "e");

    auto bad = parse_rule_response(fenced(one_rule("teleport")), a.domain, &a.problem);
    CHECK_FALSE(bad.ok);
    REQUIRE_FALSE(bad.findings.empty());
    CHECK(bad.findings[0].message.find("teleport") != std::string::npos);

    CHECK_FALSE(parse_rule_response("no document here", a.domain).ok);
    CHECK_FALSE(parse_rule_response("{\"rules\": [", a.domain).ok);
    CHECK_FALSE(parse_rule_response("{\"items\": []}", a.domain).ok);
}

TEST_CASE("canned responses agree with the reference rules") {
    for (const auto& e : catalog().entries()) {
        CAPTURE(e.id);
        auto domain = pddl::parse_domain(e.domain_text);
        auto problem = pddl::parse_problem(e.problem_text, domain);
        auto parsed = parse_rule_response(e.response_text, domain, &problem);
        REQUIRE(parsed.ok);
        auto reference = ethics::parse_ethical(e.rules_text, domain, &problem);
        CHECK(compare_rule_structure(reference, parsed.rules).empty());
        REQUIRE(parsed.rules.size() == reference.size());
        for (std::size_t i = 0; i < reference.size(); ++i) {
            CHECK(parsed.rules[i].features == reference[i].features);
            CHECK(parsed.rules[i].statement == reference[i].statement);
            CHECK_FALSE(parsed.rules[i].explanation.empty());
        }
    }
}

TEST_CASE("interchange round trip") {
    auto a = av();
    auto rules = ethics::parse_ethical(a.entry->rules_text, a.domain, &a.problem);
    auto doc = rules_document(rules);
    auto back = parse_rule_response(doc, a.domain, &a.problem);
    REQUIRE(back.ok);
    CHECK(back.rules == rules);
}

TEST_CASE("generate_rules repairs until valid") {
    auto a = av();
    const auto good = fenced(one_rule("drive-shortcut"));
    const auto bad = fenced(one_rule("teleport"));

    MockProvider p1;
    p1.script({{good}});
    auto r1 = generate_rules(p1, a.ctx, a.domain, &a.problem, "mock");
    CHECK(r1.ok);
    CHECK(r1.attempts == 1);

    MockProvider p2;
    p2.script({{bad}, {good}});
    auto r2 = generate_rules(p2, a.ctx, a.domain, &a.problem, "mock");
    CHECK(r2.ok);
    CHECK(r2.attempts == 2);
    auto reqs = p2.requests();
    REQUIRE(reqs.size() == 2);
    CHECK(reqs[1].user_content.find(bad) != std::string::npos);
    CHECK(reqs[1].user_content.find("teleport") != std::string::npos);

    MockProvider p3;
    p3.script({{bad}, {bad}, {bad}, {good}});
    auto r3 = generate_rules(p3, a.ctx, a.domain, &a.problem, "mock");
    CHECK_FALSE(r3.ok);
    CHECK(r3.attempts == 3);
    CHECK_FALSE(r3.findings.empty());
    CHECK(p3.call_count() == 3);

    MockProvider p4;
    p4.script({{bad}, {good}});
    auto r4 = generate_rules(p4, a.ctx, a.domain, &a.problem, "mock", RepairPolicy{1});
    CHECK_FALSE(r4.ok);
    CHECK(p4.call_count() == 1);
}

TEST_CASE("catalog fixtures answer the rule prompt") {
    MockProvider p;
    service::install_fixtures(p, catalog());
    auto a = av("av-hospital-leisure");
    auto r = generate_rules(p, a.ctx, a.domain, &a.problem, "mock");
    REQUIRE(r.ok);
    CHECK(r.attempts == 1);
    CHECK(r.rules.size() == 3);
}

TEST_CASE("transport failures propagate") {
    auto a = av();
    MockProvider p;
    p.script({{"", true}});
    CHECK_THROWS_AS(generate_rules(p, a.ctx, a.domain, &a.problem, "mock"), TransportError);
}

TEST_CASE("extract_rule_block") {
    auto block = extract_rule_block("text\n```pddl\n(:ethical-rules (rule a :statement \")(\" ; (\n))\n```\nmore )");
    REQUIRE(block);
    CHECK(block->rfind("(:ethical-rules", 0) == 0);
    CHECK(block->back() == ')');
    CHECK(block->find("more") == std::string::npos);
    CHECK_FALSE(extract_rule_block("(:ethical-rules (rule a"));
    CHECK_FALSE(extract_rule_block("nothing"));
}

TEST_CASE("generate_code") {
    auto a = av();
    auto rules = ethics::parse_ethical(a.entry->rules_text, a.domain, &a.problem);
    rules = ethics::set_significance(rules, "no-unauthorised-shortcut", "rule-violation", 4);
    rules[2].status = ethics::RuleStatus::Edited;

    MockProvider p;
    auto code = generate_code(p, rules, a.domain, a.entry->domain_text, &a.problem, "mock");
    REQUIRE(code.ok);
    CHECK(code.attempts == 1);
    CHECK(code.rules == rules);
    CHECK(ethics::parse_ethical(code.code, a.domain, &a.problem).size() == 3);
    auto request = p.requests().at(0);
    CHECK(request.user_content.find(std::string(kRulesBegin)) != std::string::npos);

    // an answer with the wrong rank is corrected to the user's significance
    auto wrong = rules;
    wrong[0].features[0].significance = 2;
    MockProvider q;
    q.script({{"```pddl\n" + ethics::print_ethical(wrong) + "\n```"}});
    auto fixed = generate_code(q, rules, a.domain, a.entry->domain_text, &a.problem, "mock");
    REQUIRE(fixed.ok);
    CHECK(fixed.rules[0].features[0].significance == 4);
    CHECK(fixed.code.find("(rule-violation negative 4)") != std::string::npos);

    // a structurally different answer is repaired
    auto swapped = rules;
    swapped[0].trigger_action = "drive";
    MockProvider s;
    s.script({{ethics::print_ethical(swapped)}, {ethics::print_ethical(rules)}});
    auto repaired = generate_code(s, rules, a.domain, a.entry->domain_text, &a.problem, "mock");
    CHECK(repaired.ok);
    CHECK(repaired.attempts == 2);

    MockProvider never;
    never.script({{"nothing"}, {"nothing"}, {"nothing"}});
    auto failed = generate_code(never, rules, a.domain, a.entry->domain_text, &a.problem, "mock");
    CHECK_FALSE(failed.ok);
    CHECK(failed.attempts == 3);
    CHECK_FALSE(failed.findings.empty());
}

TEST_CASE("http provider against a local endpoint") {
    httplib::Server server;
    nlohmann::json seen;
    std::string auth;
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        seen = nlohmann::json::parse(req.body);
        auth = req.get_header_value("Authorization");
        nlohmann::json out = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "hello"}}}}}}};
        res.set_content(out.dump(), "application/json");
    });
    server.Post("/broken/chat/completions", [](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
        res.set_content("{}", "application/json");
    });
    server.Post("/garbled/chat/completions", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("{\"choices\": []}", "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    const std::string base = "http://127.0.0.1:" + std::to_string(port);

    HttpProviderConfig cfg;
    cfg.base_url = base + "/v1";
    cfg.api_key = "k";
    cfg.timeout = std::chrono::seconds(5);
    HttpProvider provider(cfg);
    ProviderRequest req{"some-model", "sys", "user text"};
    CHECK(provider.complete(req) == "hello");
    CHECK(seen["model"] == "some-model");
    CHECK(seen["messages"].size() == 2);
    CHECK(seen["messages"][1]["content"] == "user text");
    CHECK(auth == "Bearer k");

    cfg.base_url = base + "/broken";
    CHECK_THROWS_AS(HttpProvider(cfg).complete(req), TransportError);
    cfg.base_url = base + "/garbled";
    CHECK_THROWS_AS(HttpProvider(cfg).complete(req), TransportError);

    server.stop();
    t.join();

    cfg.base_url = base + "/v1";
    CHECK_THROWS_AS(HttpProvider(cfg).complete(req), TransportError);
}
