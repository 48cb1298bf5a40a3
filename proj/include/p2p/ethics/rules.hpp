#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p2p/pddl/model.hpp"

namespace p2p::ethics {

inline constexpr int kMinSignificance = 1;
inline constexpr int kMaxSignificance = 5;

enum class Polarity { Positive, Negative };

std::string_view to_string(Polarity p);
std::optional<Polarity> parse_polarity(std::string_view s);

struct EthicalFeature {
    std::string name;
    Polarity polarity = Polarity::Negative;
    int significance = 1;

    bool operator==(const EthicalFeature&) const = default;
};

enum class RuleStatus { Generated, Edited, UserAdded };

std::string_view to_string(RuleStatus s);
std::optional<RuleStatus> parse_status(std::string_view s);

// A trigger (action schema + condition over its parameters) carrying
// ethically relevant features. Negative features charge every firing;
// positive features are satisfied once the rule fires at least once.
struct EthicalRule {
    std::string id;
    std::string statement;
    std::string principle;
    std::string explanation;
    std::string trigger_action;
    std::vector<pddl::Literal> condition;
    std::vector<EthicalFeature> features;
    RuleStatus status = RuleStatus::Generated;

    bool operator==(const EthicalRule&) const = default;

    bool has_negative() const;
    bool has_positive() const;
    const EthicalFeature* find_feature(std::string_view name) const;
};

struct EthicalTask {
    pddl::PlanningDomain domain;
    pddl::PlanningProblem problem;
    std::vector<EthicalRule> rules;
};

// Throws ErrorKind::Validation listing every error finding.
EthicalTask make_ethical_task(pddl::PlanningDomain domain, pddl::PlanningProblem problem,
                              std::vector<EthicalRule> rules);

// Returns a copy where only the named feature's significance changes.
// Throws Unknown for a missing rule or feature, Range for rank outside [1,5].
std::vector<EthicalRule> set_significance(std::vector<EthicalRule> rules, std::string_view rule_id,
                                          std::string_view feature, int rank);

const EthicalRule* find_rule(const std::vector<EthicalRule>& rules, std::string_view id);

}  // namespace p2p::ethics
