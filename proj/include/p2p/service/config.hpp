#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "p2p/llm/generate.hpp"
#include "p2p/service/comparison.hpp"

namespace p2p::service {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path storage_dir = "sessions";
    std::filesystem::path data_dir = P2P_DEFAULT_DATA_DIR;

    std::string provider = "mock";  // mock | http
    std::string provider_base_url = "https://api.openai.com/v1";
    std::string default_model = "mock";
    int max_attempts = 3;

    std::string planner_executable;  // empty: internal search
    std::vector<std::string> planner_arguments{"{domain}", "{problem}", "{plan}"};
    int planner_timeout_seconds = 60;

    std::int64_t weight_scale = 10;
    std::int64_t weight_base = 100;
    std::string search_mode = "astar";
    std::uint64_t node_cap = 5'000'000;
    double time_cap_seconds = 60.0;

    PlanningSettings planning() const;
    llm::RepairPolicy repair_policy() const { return {max_attempts}; }
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Process environment.
std::optional<std::string> getenv_lookup(const std::string& name);

// Keys mirror the field names; unknown keys are rejected.
ServiceConfig load_config_file(const std::filesystem::path& path);

// P2P_HOST, P2P_PORT, P2P_STORAGE_DIR, P2P_DATA_DIR, P2P_PROVIDER,
// P2P_LLM_BASE_URL, P2P_MODEL, P2P_MAX_ATTEMPTS, P2P_PLANNER,
// P2P_PLANNER_TIMEOUT, P2P_WEIGHT_SCALE, P2P_WEIGHT_BASE, P2P_SEARCH_MODE,
// P2P_NODE_CAP, P2P_TIME_CAP.
void apply_env_overrides(ServiceConfig& config, const EnvLookup& lookup = getenv_lookup);

// Throws Validation on out-of-range values.
void validate_config(const ServiceConfig& config);

}  // namespace p2p::service
