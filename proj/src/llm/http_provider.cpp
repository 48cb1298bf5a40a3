#include "p2p/llm/http_provider.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

namespace p2p::llm {

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
    if (config_.api_key.empty())
        if (const char* k = std::getenv("P2P_LLM_API_KEY")) config_.api_key = k;

    const auto scheme_end = config_.base_url.find("://");
    if (scheme_end == std::string::npos) throw Error(ErrorKind::Validation, "provider URL needs a scheme: " + config_.base_url);
    const auto path_start = config_.base_url.find('/', scheme_end + 3);
    origin_ = config_.base_url.substr(0, path_start);
    if (path_start != std::string::npos) path_prefix_ = config_.base_url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string HttpProvider::complete(const ProviderRequest& request) {
    nlohmann::json body = {
        {"model", request.model},
        {"temperature", request.temperature},
        {"max_tokens", request.max_output_tokens},
        {"messages",
         nlohmann::json::array({{{"role", "system"}, {"content", request.system_instructions}},
                                {{"role", "user"}, {"content", request.user_content}}})},
    };

    httplib::Client client(origin_);
    const auto secs = static_cast<time_t>(config_.timeout.count());
    client.set_connection_timeout(secs, 0);
    client.set_read_timeout(secs, 0);
    client.set_write_timeout(secs, 0);
    httplib::Headers headers;
    if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

    auto res = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(), "application/json");
    if (!res) throw TransportError("request to " + origin_ + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw TransportError("provider answered HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 500));

    try {
        const auto reply = nlohmann::json::parse(res->body);
        const auto& content = reply.at("choices").at(0).at("message").at("content");
        if (!content.is_string()) throw TransportError("provider reply has no text content");
        return content.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("malformed provider reply: ") + e.what());
    }
}

}  // namespace p2p::llm
