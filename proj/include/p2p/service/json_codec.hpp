#pragma once

#include <json.hpp>

#include "p2p/ethics/simulate.hpp"
#include "p2p/ethics/validate.hpp"
#include "p2p/planner/plan.hpp"
#include "p2p/service/comparison.hpp"
#include "p2p/service/session.hpp"

namespace p2p::service {

using nlohmann::json;

json to_json(const pddl::PlanStep& step);
pddl::PlanStep step_from_json(const json& j);

json to_json(const planner::Plan& plan);
planner::Plan plan_from_json(const json& j);

json to_json(const ethics::Finding& finding);
ethics::Finding finding_from_json(const json& j);

json to_json(const ethics::FeatureTally& tally);
ethics::FeatureTally tally_from_json(const json& j);

json to_json(const PlanComparison& comparison);
PlanComparison comparison_from_json(const json& j);

json to_json(const SessionInputs& inputs);
SessionInputs inputs_from_json(const json& j);

// Complete session document; also the persisted form.
json to_json(const Session& session);
// Rules are re-resolved against the session's own domain and problem.
Session session_from_json(const json& j);

}  // namespace p2p::service
