#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "p2p/ethics/rules.hpp"
#include "p2p/ethics/validate.hpp"
#include "p2p/llm/generate.hpp"
#include "p2p/llm/prompt.hpp"
#include "p2p/service/comparison.hpp"

namespace p2p::service {

enum class Stage { Draft, RulesGenerated, RulesFinalized, CodeGenerated, CodeFinalized, Planned };

std::string_view to_string(Stage s);  // "rules-generated"
// Accepts the kebab form and CamelCase, case-insensitively.
std::optional<Stage> parse_stage(std::string_view s);

struct SessionInputs {
    llm::RuleGenerationContext context;
    std::string model = "mock";
    std::string example_id;  // empty unless created from the catalog

    bool operator==(const SessionInputs&) const = default;
};

struct Session {
    std::string id;
    Stage stage = Stage::Draft;
    SessionInputs inputs;
    std::vector<ethics::EthicalRule> rules;  // RulesGenerated and later
    int rule_attempts = 0;
    std::string code;                        // CodeGenerated and later
    int code_attempts = 0;
    bool code_valid = false;
    std::vector<ethics::Finding> code_findings;
    std::optional<SourceLocation> code_error_location;
    std::optional<PlanComparison> comparison;  // Planned only
    std::string created_at;
    std::string updated_at;

    bool operator==(const Session&) const = default;
};

// An operation that failed on content, with the findings that explain it.
class StageFailure : public Error {
public:
    StageFailure(ErrorKind kind, std::string message, std::vector<ethics::Finding> findings, int attempts = 0)
        : Error(kind, std::move(message)), findings_(std::move(findings)), attempts_(attempts) {}
    const std::vector<ethics::Finding>& findings() const { return findings_; }
    int attempts() const { return attempts_; }

private:
    std::vector<ethics::Finding> findings_;
    int attempts_;
};

struct Environment {
    llm::Provider* provider = nullptr;
    llm::RepairPolicy policy;
    PlanningSettings planning;
};

struct ParsedInputs {
    pddl::PlanningDomain domain;
    pddl::PlanningProblem problem;
};

// Throws the parser's located errors.
ParsedInputs parse_inputs(const SessionInputs& inputs);

// Validates inputs; the session is not persisted here.
Session create_session(SessionInputs inputs, std::string id, std::string now);

// Moves exactly one stage forward. On any failure the session is left
// untouched.
void advance(Session& session, Stage target, const Environment& env, std::string now);

struct AddRule {
    ethics::EthicalRule rule;
};
struct RemoveRule {
    std::string rule_id;
};
struct UpdateRule {
    ethics::EthicalRule rule;  // replaces the rule with the same id
};
struct SetSignificance {
    std::string rule_id;
    std::string feature;
    int rank = 1;
};
using RuleEdit = std::variant<AddRule, RemoveRule, UpdateRule, SetSignificance>;

// Applies all edits or none. Rule errors leave the session unchanged;
// otherwise the session falls back to RulesGenerated and code and plans are
// dropped.
void edit_rules(Session& session, const std::vector<RuleEdit>& edits, std::string now);

// Always stores the text; unparsable code marks the session code-invalid.
// The session falls back to CodeGenerated and plans are dropped.
void replace_code(Session& session, std::string code, std::string now);

// Rules parsed from the session's code, for planning.
ethics::EthicalTask code_task(const Session& session);

}  // namespace p2p::service
