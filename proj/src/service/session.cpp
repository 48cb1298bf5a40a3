#include "p2p/service/session.hpp"

#include <algorithm>

#include "p2p/common/text.hpp"
#include "p2p/ethics/dialect.hpp"
#include "p2p/pddl/parser.hpp"

namespace p2p::service {

namespace {

constexpr std::string_view kStageNames[] = {"draft", "rules-generated", "rules-finalized",
                                            "code-generated", "code-finalized", "planned"};

void drop_after(Session& s, Stage stage) {
    if (s.stage <= stage) return;
    s.stage = stage;
    if (stage < Stage::CodeGenerated) {
        s.code.clear();
        s.code_attempts = 0;
        s.code_valid = false;
        s.code_findings.clear();
        s.code_error_location.reset();
    }
    s.comparison.reset();
}

void require_stage_at_least(const Session& s, Stage stage, std::string_view what) {
    if (s.stage < stage)
        throw Error(ErrorKind::StageOrder, std::string(what) + " needs stage " + std::string(to_string(stage)) +
                                               " or later; session is " + std::string(to_string(s.stage)));
}

std::vector<ethics::Finding> error_findings(const ethics::ValidationReport& report) {
    std::vector<ethics::Finding> out;
    for (const auto& f : report.findings)
        if (f.severity == ethics::Severity::Error) out.push_back(f);
    return out;
}

}  // namespace

std::string_view to_string(Stage s) { return kStageNames[static_cast<int>(s)]; }

std::optional<Stage> parse_stage(std::string_view s) {
    std::string key;
    for (char c : s)
        if (c != '-' && c != '_') key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (int i = 0; i < 6; ++i) {
        std::string name;
        for (char c : kStageNames[i])
            if (c != '-') name += c;
        if (name == key) return static_cast<Stage>(i);
    }
    return std::nullopt;
}

ParsedInputs parse_inputs(const SessionInputs& inputs) {
    ParsedInputs p;
    p.domain = pddl::parse_domain(inputs.context.domain_text);
    p.problem = pddl::parse_problem(inputs.context.problem_text, p.domain);
    return p;
}

Session create_session(SessionInputs inputs, std::string id, std::string now) {
    llm::validate_context(inputs.context);
    if (text::trim(inputs.model).empty()) throw Error(ErrorKind::Validation, "model name must not be empty");
    parse_inputs(inputs);
    Session s;
    s.id = std::move(id);
    s.inputs = std::move(inputs);
    s.created_at = now;
    s.updated_at = std::move(now);
    return s;
}

ethics::EthicalTask code_task(const Session& session) {
    auto parsed = parse_inputs(session.inputs);
    auto rules = ethics::parse_ethical(session.code, parsed.domain, &parsed.problem);
    return ethics::make_ethical_task(std::move(parsed.domain), std::move(parsed.problem), std::move(rules));
}

void advance(Session& session, Stage target, const Environment& env, std::string now) {
    if (session.stage == Stage::Planned || static_cast<int>(target) != static_cast<int>(session.stage) + 1)
        throw Error(ErrorKind::StageOrder, "cannot advance from " + std::string(to_string(session.stage)) + " to " +
                                               std::string(to_string(target)) + "; stages advance one at a time");

    Session next = session;
    switch (target) {
        case Stage::RulesGenerated: {
            if (!env.provider) throw Error(ErrorKind::Transport, "no text-generation provider configured");
            const auto parsed = parse_inputs(session.inputs);
            auto r = llm::generate_rules(*env.provider, session.inputs.context, parsed.domain, &parsed.problem,
                                         session.inputs.model, env.policy);
            if (!r.ok)
                throw StageFailure(ErrorKind::Validation,
                                   "rule generation failed after " + std::to_string(r.attempts) + " attempt(s)",
                                   r.findings, r.attempts);
            next.rules = std::move(r.rules);
            next.rule_attempts = r.attempts;
            break;
        }
        case Stage::RulesFinalized: {
            const auto parsed = parse_inputs(session.inputs);
            auto errors = error_findings(ethics::validate_rules(session.rules, parsed.domain, &parsed.problem));
            if (!errors.empty()) throw StageFailure(ErrorKind::Validation, "rules have errors", std::move(errors));
            break;
        }
        case Stage::CodeGenerated: {
            if (!env.provider) throw Error(ErrorKind::Transport, "no text-generation provider configured");
            const auto parsed = parse_inputs(session.inputs);
            auto r = llm::generate_code(*env.provider, session.rules, parsed.domain, session.inputs.context.domain_text,
                                        &parsed.problem, session.inputs.model, env.policy);
            if (!r.ok)
                throw StageFailure(ErrorKind::Validation,
                                   "code generation failed after " + std::to_string(r.attempts) + " attempt(s)",
                                   r.findings, r.attempts);
            next.code = std::move(r.code);
            next.code_attempts = r.attempts;
            next.code_valid = true;
            next.code_findings.clear();
            next.code_error_location.reset();
            break;
        }
        case Stage::CodeFinalized:
            if (!session.code_valid)
                throw StageFailure(ErrorKind::Validation, "code has errors; fix it before finalizing",
                                   session.code_findings);
            break;
        case Stage::Planned:
            next.comparison = plan_and_compare(code_task(session), env.planning);
            break;
        case Stage::Draft:
            break;
    }
    next.stage = target;
    next.updated_at = std::move(now);
    session = std::move(next);
}

void edit_rules(Session& session, const std::vector<RuleEdit>& edits, std::string now) {
    require_stage_at_least(session, Stage::RulesGenerated, "editing rules");
    auto rules = session.rules;
    auto find = [&](std::string_view id) {
        return std::find_if(rules.begin(), rules.end(), [&](const auto& r) { return text::iequals(r.id, id); });
    };
    for (const auto& edit : edits) {
        if (auto* add = std::get_if<AddRule>(&edit)) {
            if (find(add->rule.id) != rules.end())
                throw Error(ErrorKind::Duplicate, "rule '" + add->rule.id + "' already exists");
            auto r = add->rule;
            r.status = ethics::RuleStatus::UserAdded;
            rules.push_back(std::move(r));
        } else if (auto* rm = std::get_if<RemoveRule>(&edit)) {
            auto it = find(rm->rule_id);
            if (it == rules.end()) throw Error(ErrorKind::Unknown, "unknown rule '" + rm->rule_id + "'");
            rules.erase(it);
        } else if (auto* up = std::get_if<UpdateRule>(&edit)) {
            auto it = find(up->rule.id);
            if (it == rules.end()) throw Error(ErrorKind::Unknown, "unknown rule '" + up->rule.id + "'");
            auto r = up->rule;
            r.status = it->status == ethics::RuleStatus::UserAdded ? ethics::RuleStatus::UserAdded
                                                                   : ethics::RuleStatus::Edited;
            *it = std::move(r);
        } else if (auto* sig = std::get_if<SetSignificance>(&edit)) {
            rules = ethics::set_significance(std::move(rules), sig->rule_id, sig->feature, sig->rank);
        }
    }
    const auto parsed = parse_inputs(session.inputs);
    auto errors = error_findings(ethics::validate_rules(rules, parsed.domain, &parsed.problem));
    if (!errors.empty()) throw StageFailure(ErrorKind::Validation, "edited rules have errors", std::move(errors));

    session.rules = std::move(rules);
    drop_after(session, Stage::RulesGenerated);
    session.updated_at = std::move(now);
}

void replace_code(Session& session, std::string code, std::string now) {
    require_stage_at_least(session, Stage::CodeGenerated, "replacing code");
    session.code = std::move(code);
    session.code_findings.clear();
    session.code_error_location.reset();
    try {
        const auto parsed = parse_inputs(session.inputs);
        auto rules = ethics::parse_ethical(session.code, parsed.domain, &parsed.problem);
        session.code_findings = error_findings(ethics::validate_rules(rules, parsed.domain, &parsed.problem));
    } catch (const Error& e) {
        session.code_findings.push_back({"", ethics::Severity::Error, e.message()});
        session.code_error_location = e.location();
    }
    session.code_valid = session.code_findings.empty();
    drop_after(session, Stage::CodeGenerated);
    session.updated_at = std::move(now);
}

}  // namespace p2p::service
