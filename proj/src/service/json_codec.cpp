#include "p2p/service/json_codec.hpp"

#include "p2p/common/error.hpp"
#include "p2p/llm/interchange.hpp"

namespace p2p::service {

namespace {

template <typename T>
std::optional<T> opt(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<T>();
}

json opt_json(const auto& value) { return value ? to_json(*value) : json(nullptr); }

std::string_view align_name(AlignKind k) {
    switch (k) {
        case AlignKind::Common: return "common";
        case AlignKind::BaselineOnly: return "baseline-only";
        case AlignKind::EthicalOnly: return "ethical-only";
    }
    return "common";
}

AlignKind parse_align(const std::string& s) {
    if (s == "baseline-only") return AlignKind::BaselineOnly;
    if (s == "ethical-only") return AlignKind::EthicalOnly;
    return AlignKind::Common;
}

planner::SolveStatus parse_status(const std::string& s) {
    using planner::SolveStatus;
    for (auto st : {SolveStatus::Solved, SolveStatus::Unsolvable, SolveStatus::ResourceLimit, SolveStatus::Cancelled,
                    SolveStatus::Failed})
        if (planner::to_string(st) == s) return st;
    throw Error(ErrorKind::Syntax, "unknown solve status '" + s + "'");
}

json outcome_json(const PlanOutcome& o) {
    return {{"status", std::string(planner::to_string(o.status))},
            {"plan", o.plan ? to_json(*o.plan) : json(nullptr)},
            {"message", o.message}};
}

PlanOutcome outcome_from(const json& j) {
    PlanOutcome o;
    o.status = parse_status(j.at("status").get<std::string>());
    if (j.contains("plan") && !j["plan"].is_null()) o.plan = plan_from_json(j["plan"]);
    o.message = j.value("message", "");
    return o;
}

json charged_json(const transpiler::ChargedStep& c) {
    return {{"compiled_index", c.compiled_index},
            {"original_index", c.original_index ? json(*c.original_index) : json(nullptr)},
            {"compiled_action", c.compiled_action},
            {"rule_ids", c.rule_ids},
            {"penalty", c.penalty}};
}

transpiler::ChargedStep charged_from(const json& j) {
    transpiler::ChargedStep c;
    c.compiled_index = j.at("compiled_index").get<std::size_t>();
    c.original_index = opt<std::size_t>(j, "original_index");
    c.compiled_action = j.at("compiled_action").get<std::string>();
    c.rule_ids = j.at("rule_ids").get<std::vector<std::string>>();
    c.penalty = j.at("penalty").get<std::int64_t>();
    return c;
}

}  // namespace

json to_json(const pddl::PlanStep& step) { return {{"action", step.action}, {"args", step.args}, {"label", step.label()}}; }

pddl::PlanStep step_from_json(const json& j) {
    return {j.at("action").get<std::string>(), j.at("args").get<std::vector<std::string>>()};
}

json to_json(const planner::Plan& plan) {
    json steps = json::array();
    for (const auto& s : plan.steps) steps.push_back(to_json(s));
    return {{"steps", steps},
            {"total_cost", plan.total_cost ? json(*plan.total_cost) : json(nullptr)},
            {"provenance", std::string(planner::to_string(plan.provenance))},
            {"mode", std::string(planner::to_string(plan.mode))},
            {"optimal", plan.optimal}};
}

planner::Plan plan_from_json(const json& j) {
    planner::Plan p;
    for (const auto& s : j.at("steps")) p.steps.push_back(step_from_json(s));
    p.total_cost = opt<std::int64_t>(j, "total_cost");
    p.provenance = j.value("provenance", "internal") == "external" ? planner::Provenance::External
                                                                   : planner::Provenance::Internal;
    if (auto m = planner::parse_search_mode(j.value("mode", "optimal"))) p.mode = *m;
    p.optimal = j.value("optimal", true);
    return p;
}

json to_json(const ethics::Finding& f) {
    return {{"rule", f.rule_id},
            {"severity", f.severity == ethics::Severity::Error ? "error" : "warning"},
            {"message", f.message}};
}

ethics::Finding finding_from_json(const json& j) {
    return {j.value("rule", ""), j.value("severity", "error") == "warning" ? ethics::Severity::Warning : ethics::Severity::Error,
            j.value("message", "")};
}

json to_json(const ethics::FeatureTally& t) {
    json rules = json::array();
    for (const auto& r : t.rules) {
        json feats = json::array();
        for (const auto& f : r.features)
            feats.push_back({{"feature", f.feature},
                             {"polarity", std::string(ethics::to_string(f.polarity))},
                             {"significance", f.significance},
                             {"weight", f.weight},
                             {"penalty", f.penalty}});
        rules.push_back({{"rule", r.rule_id},
                         {"firings", r.firings},
                         {"achieved", r.achieved},
                         {"features", feats},
                         {"penalty", r.penalty}});
    }
    json steps = json::array();
    for (const auto& s : t.steps) steps.push_back({{"step", s.step}, {"rules", s.rule_ids}, {"penalty", s.penalty}});
    return {{"rules", rules}, {"steps", steps}, {"base_cost", t.base_cost}, {"penalty_total", t.penalty_total}};
}

ethics::FeatureTally tally_from_json(const json& j) {
    ethics::FeatureTally t;
    for (const auto& r : j.at("rules")) {
        ethics::RuleTally rt;
        rt.rule_id = r.at("rule").get<std::string>();
        rt.firings = r.at("firings").get<std::int64_t>();
        rt.achieved = r.at("achieved").get<bool>();
        rt.penalty = r.at("penalty").get<std::int64_t>();
        for (const auto& f : r.at("features")) {
            ethics::FeatureCharge c;
            c.feature = f.at("feature").get<std::string>();
            c.polarity = ethics::parse_polarity(f.at("polarity").get<std::string>()).value_or(ethics::Polarity::Negative);
            c.significance = f.at("significance").get<int>();
            c.weight = f.at("weight").get<std::int64_t>();
            c.penalty = f.at("penalty").get<std::int64_t>();
            rt.features.push_back(std::move(c));
        }
        t.rules.push_back(std::move(rt));
    }
    for (const auto& s : j.at("steps"))
        t.steps.push_back({s.at("step").get<std::size_t>(), s.at("rules").get<std::vector<std::string>>(),
                           s.at("penalty").get<std::int64_t>()});
    t.base_cost = j.at("base_cost").get<std::int64_t>();
    t.penalty_total = j.at("penalty_total").get<std::int64_t>();
    return t;
}

json to_json(const PlanComparison& c) {
    json charges = json::array();
    for (const auto& x : c.charges) charges.push_back(charged_json(x));
    json alignment = json::array();
    for (const auto& a : c.alignment)
        alignment.push_back({{"kind", std::string(align_name(a.kind))},
                             {"baseline_index", a.baseline_index ? json(*a.baseline_index) : json(nullptr)},
                             {"ethical_index", a.ethical_index ? json(*a.ethical_index) : json(nullptr)},
                             {"label", a.label}});
    return {{"baseline", outcome_json(c.baseline)},
            {"ethical", outcome_json(c.ethical)},
            {"tally", opt_json(c.tally)},
            {"baseline_tally", opt_json(c.baseline_tally)},
            {"charges", charges},
            {"alignment", alignment},
            {"identical", c.identical}};
}

PlanComparison comparison_from_json(const json& j) {
    PlanComparison c;
    c.baseline = outcome_from(j.at("baseline"));
    c.ethical = outcome_from(j.at("ethical"));
    if (!j.at("tally").is_null()) c.tally = tally_from_json(j["tally"]);
    if (!j.at("baseline_tally").is_null()) c.baseline_tally = tally_from_json(j["baseline_tally"]);
    for (const auto& x : j.at("charges")) c.charges.push_back(charged_from(x));
    for (const auto& a : j.at("alignment"))
        c.alignment.push_back({parse_align(a.at("kind").get<std::string>()), opt<std::size_t>(a, "baseline_index"),
                               opt<std::size_t>(a, "ethical_index"), a.at("label").get<std::string>()});
    c.identical = j.at("identical").get<bool>();
    return c;
}

json to_json(const SessionInputs& in) {
    const auto& c = in.context;
    return {{"domain", c.domain_text},
            {"problem", c.problem_text},
            {"initial_state_notes", c.initial_state_notes},
            {"assumptions", c.assumptions},
            {"principles", c.principles},
            {"rule_count_hint", c.rule_count_hint ? json(*c.rule_count_hint) : json(nullptr)},
            {"model", in.model},
            {"example_id", in.example_id}};
}

SessionInputs inputs_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Syntax, "inputs must be an object");
    SessionInputs in;
    auto str = [&](const char* key) -> std::string {
        if (!j.contains(key) || j[key].is_null()) return {};
        if (!j[key].is_string()) throw Error(ErrorKind::Syntax, std::string("field '") + key + "' must be a string");
        return j[key].get<std::string>();
    };
    in.context.domain_text = str("domain");
    in.context.problem_text = str("problem");
    in.context.initial_state_notes = str("initial_state_notes");
    in.context.assumptions = str("assumptions");
    if (j.contains("principles")) {
        if (!j["principles"].is_array()) throw Error(ErrorKind::Syntax, "'principles' must be a list of strings");
        for (const auto& p : j["principles"]) {
            if (!p.is_string()) throw Error(ErrorKind::Syntax, "'principles' must be a list of strings");
            in.context.principles.push_back(p.get<std::string>());
        }
    }
    if (j.contains("rule_count_hint") && !j["rule_count_hint"].is_null()) {
        if (!j["rule_count_hint"].is_number_integer())
            throw Error(ErrorKind::Syntax, "'rule_count_hint' must be an integer");
        in.context.rule_count_hint = j["rule_count_hint"].get<int>();
    }
    if (auto m = str("model"); !m.empty()) in.model = m;
    in.example_id = str("example_id");
    return in;
}

json to_json(const Session& s) {
    json rules = json::array();
    for (const auto& r : s.rules) rules.push_back(llm::rule_to_json(r, true));
    json findings = json::array();
    for (const auto& f : s.code_findings) findings.push_back(to_json(f));
    json loc = s.code_error_location
                   ? json{{"line", s.code_error_location->line}, {"column", s.code_error_location->column}}
                   : json(nullptr);
    return {{"id", s.id},
            {"stage", std::string(to_string(s.stage))},
            {"inputs", to_json(s.inputs)},
            {"rules", rules},
            {"rule_attempts", s.rule_attempts},
            {"code", s.code},
            {"code_attempts", s.code_attempts},
            {"code_valid", s.code_valid},
            {"code_findings", findings},
            {"code_error_location", loc},
            {"comparison", opt_json(s.comparison)},
            {"created_at", s.created_at},
            {"updated_at", s.updated_at}};
}

Session session_from_json(const json& j) {
    Session s;
    s.id = j.at("id").get<std::string>();
    auto stage = parse_stage(j.at("stage").get<std::string>());
    if (!stage) throw Error(ErrorKind::Syntax, "unknown stage '" + j["stage"].get<std::string>() + "'");
    s.stage = *stage;
    s.inputs = inputs_from_json(j.at("inputs"));
    if (!j.at("rules").empty()) {
        const auto parsed = parse_inputs(s.inputs);
        for (const auto& r : j["rules"]) s.rules.push_back(llm::rule_from_json(r, parsed.domain, &parsed.problem));
    }
    s.rule_attempts = j.value("rule_attempts", 0);
    s.code = j.value("code", "");
    s.code_attempts = j.value("code_attempts", 0);
    s.code_valid = j.value("code_valid", false);
    for (const auto& f : j.value("code_findings", json::array())) s.code_findings.push_back(finding_from_json(f));
    if (j.contains("code_error_location") && !j["code_error_location"].is_null())
        s.code_error_location = SourceLocation{j["code_error_location"].at("line").get<int>(),
                                               j["code_error_location"].at("column").get<int>()};
    if (j.contains("comparison") && !j["comparison"].is_null()) s.comparison = comparison_from_json(j["comparison"]);
    s.created_at = j.value("created_at", "");
    s.updated_at = j.value("updated_at", "");
    return s;
}

}  // namespace p2p::service
