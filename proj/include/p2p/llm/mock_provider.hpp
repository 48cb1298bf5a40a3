#pragma once

#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "p2p/llm/provider.hpp"

namespace p2p::llm {

// Deterministic offline provider. Answers, in order of preference:
//   1. the next scripted reply, if any remain;
//   2. a fixture keyed by request_key(request);
//   3. for code requests, a faithful dialect rendering of the embedded
//      rules document; otherwise an empty rules document.
class MockProvider : public Provider {
public:
    struct Reply {
        std::string text;
        bool transport_failure = false;
    };

    static std::string request_key(const ProviderRequest& request);

    void add_fixture(const ProviderRequest& request, std::string response);
    void add_fixture_by_key(std::string key, std::string response);
    void script(std::vector<Reply> replies);

    std::string complete(const ProviderRequest& request) override;
    std::string name() const override { return "mock"; }

    int call_count() const;
    std::vector<ProviderRequest> requests() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::string> fixtures_;
    std::deque<Reply> scripted_;
    std::vector<ProviderRequest> requests_;
};

// Dialect text for a rules interchange document without resolving names.
// Throws Error on malformed JSON.
std::string render_rules_document_as_dialect(std::string_view json_text);

}  // namespace p2p::llm
