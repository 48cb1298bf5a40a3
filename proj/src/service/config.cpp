#include "p2p/service/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "p2p/common/error.hpp"

namespace p2p::service {

namespace {

template <typename T>
T parse_number(const std::string& name, const std::string& value) {
    std::istringstream in(value);
    T out{};
    in >> out;
    if (!in || !in.eof()) throw Error(ErrorKind::Validation, name + ": not a number: '" + value + "'");
    return out;
}

}  // namespace

PlanningSettings ServiceConfig::planning() const {
    PlanningSettings s;
    s.scheme = {weight_scale, weight_base};
    auto mode = planner::parse_search_mode(search_mode);
    s.search.mode = mode.value_or(planner::SearchMode::Astar);
    s.search.node_cap = node_cap;
    s.search.time_cap_seconds = time_cap_seconds;
    if (!planner_executable.empty()) {
        planner::ExternalPlannerConfig ext;
        ext.executable = planner_executable;
        ext.arguments = planner_arguments;
        ext.timeout = std::chrono::seconds(planner_timeout_seconds);
        s.external = ext;
    }
    return s;
}

std::optional<std::string> getenv_lookup(const std::string& name) {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
}

ServiceConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read config " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Syntax, path.string() + ": " + e.what());
    }
    ServiceConfig c;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "host") c.host = v.get<std::string>();
            else if (key == "port") c.port = v.get<int>();
            else if (key == "storage_dir") c.storage_dir = v.get<std::string>();
            else if (key == "data_dir") c.data_dir = v.get<std::string>();
            else if (key == "provider") c.provider = v.get<std::string>();
            else if (key == "provider_base_url") c.provider_base_url = v.get<std::string>();
            else if (key == "default_model") c.default_model = v.get<std::string>();
            else if (key == "max_attempts") c.max_attempts = v.get<int>();
            else if (key == "planner_executable") c.planner_executable = v.get<std::string>();
            else if (key == "planner_arguments") c.planner_arguments = v.get<std::vector<std::string>>();
            else if (key == "planner_timeout_seconds") c.planner_timeout_seconds = v.get<int>();
            else if (key == "weight_scale") c.weight_scale = v.get<std::int64_t>();
            else if (key == "weight_base") c.weight_base = v.get<std::int64_t>();
            else if (key == "search_mode") c.search_mode = v.get<std::string>();
            else if (key == "node_cap") c.node_cap = v.get<std::uint64_t>();
            else if (key == "time_cap_seconds") c.time_cap_seconds = v.get<double>();
            else throw Error(ErrorKind::Validation, path.string() + ": unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Validation, path.string() + ": " + e.what());
    }
    return c;
}

void apply_env_overrides(ServiceConfig& c, const EnvLookup& lookup) {
    auto get = [&](const char* name, auto apply) {
        if (auto v = lookup(name)) apply(*v);
    };
    get("P2P_HOST", [&](const std::string& v) { c.host = v; });
    get("P2P_PORT", [&](const std::string& v) { c.port = parse_number<int>("P2P_PORT", v); });
    get("P2P_STORAGE_DIR", [&](const std::string& v) { c.storage_dir = v; });
    get("P2P_DATA_DIR", [&](const std::string& v) { c.data_dir = v; });
    get("P2P_PROVIDER", [&](const std::string& v) { c.provider = v; });
    get("P2P_LLM_BASE_URL", [&](const std::string& v) { c.provider_base_url = v; });
    get("P2P_MODEL", [&](const std::string& v) { c.default_model = v; });
    get("P2P_MAX_ATTEMPTS", [&](const std::string& v) { c.max_attempts = parse_number<int>("P2P_MAX_ATTEMPTS", v); });
    get("P2P_PLANNER", [&](const std::string& v) { c.planner_executable = v; });
    get("P2P_PLANNER_TIMEOUT",
        [&](const std::string& v) { c.planner_timeout_seconds = parse_number<int>("P2P_PLANNER_TIMEOUT", v); });
    get("P2P_WEIGHT_SCALE",
        [&](const std::string& v) { c.weight_scale = parse_number<std::int64_t>("P2P_WEIGHT_SCALE", v); });
    get("P2P_WEIGHT_BASE", [&](const std::string& v) { c.weight_base = parse_number<std::int64_t>("P2P_WEIGHT_BASE", v); });
    get("P2P_SEARCH_MODE", [&](const std::string& v) { c.search_mode = v; });
    get("P2P_NODE_CAP", [&](const std::string& v) { c.node_cap = parse_number<std::uint64_t>("P2P_NODE_CAP", v); });
    get("P2P_TIME_CAP", [&](const std::string& v) { c.time_cap_seconds = parse_number<double>("P2P_TIME_CAP", v); });
}

void validate_config(const ServiceConfig& c) {
    if (c.port < 0 || c.port > 65535) throw Error(ErrorKind::Validation, "port out of range");
    if (c.provider != "mock" && c.provider != "http")
        throw Error(ErrorKind::Validation, "provider must be 'mock' or 'http', got '" + c.provider + "'");
    if (c.default_model.empty()) throw Error(ErrorKind::Validation, "default model must not be empty");
    if (c.max_attempts < 1) throw Error(ErrorKind::Validation, "max_attempts must be at least 1");
    if (c.planner_timeout_seconds < 1) throw Error(ErrorKind::Validation, "planner timeout must be positive");
    if (!planner::parse_search_mode(c.search_mode))
        throw Error(ErrorKind::Validation, "unknown search mode '" + c.search_mode + "'");
    if (c.node_cap == 0 || c.time_cap_seconds <= 0) throw Error(ErrorKind::Validation, "search caps must be positive");
    transpiler::validate_scheme({c.weight_scale, c.weight_base});
}

}  // namespace p2p::service
