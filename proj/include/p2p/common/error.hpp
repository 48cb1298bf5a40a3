#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace p2p {

enum class ErrorKind {
    Syntax,
    Unsupported,
    Arity,
    Type,
    Duplicate,
    Unknown,
    Range,
    ResourceLimit,
    PreconditionViolated,
    InvalidPlan,
    NameCollision,
    StageOrder,
    Validation,
    Transport,
    Busy,
    Io,
};

std::string_view to_string(ErrorKind kind);

struct SourceLocation {
    int line = 0;
    int column = 0;
    bool operator==(const SourceLocation&) const = default;
};

// Every failure surfaced by the library. The message never repeats the
// location; what() prefixes it when one is attached.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::optional<SourceLocation> location = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }
    const std::optional<SourceLocation>& location() const noexcept { return location_; }

private:
    ErrorKind kind_;
    std::string message_;
    std::optional<SourceLocation> location_;
};

}  // namespace p2p
