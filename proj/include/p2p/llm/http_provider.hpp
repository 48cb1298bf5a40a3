#pragma once

#include <chrono>
#include <string>

#include "p2p/llm/provider.hpp"

namespace p2p::llm {

struct HttpProviderConfig {
    std::string base_url = "https://api.openai.com/v1";  // scheme://host[:port][/prefix]
    std::string api_key;                                // empty: read P2P_LLM_API_KEY
    std::chrono::seconds timeout{120};
};

// OpenAI-compatible chat-completions endpoint: POST {base}/chat/completions.
class HttpProvider : public Provider {
public:
    explicit HttpProvider(HttpProviderConfig config);

    std::string complete(const ProviderRequest& request) override;
    std::string name() const override { return "http"; }

private:
    HttpProviderConfig config_;
    std::string origin_;
    std::string path_prefix_;
};

}  // namespace p2p::llm
