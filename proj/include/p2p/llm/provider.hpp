#pragma once

#include <string>

#include "p2p/common/error.hpp"

namespace p2p::llm {

struct ProviderRequest {
    std::string model;
    std::string system_instructions;
    std::string user_content;
    int max_output_tokens = 4096;
    double temperature = 0.0;

    bool operator==(const ProviderRequest&) const = default;
};

// Raised for connection, HTTP or protocol failures; never for content that
// fails validation.
class TransportError : public Error {
public:
    explicit TransportError(std::string message) : Error(ErrorKind::Transport, std::move(message)) {}
};

class Provider {
public:
    virtual ~Provider() = default;
    // Blocking. Throws TransportError.
    virtual std::string complete(const ProviderRequest& request) = 0;
    virtual std::string name() const = 0;
};

}  // namespace p2p::llm
