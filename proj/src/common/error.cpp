#include "p2p/common/error.hpp"

namespace p2p {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Arity: return "arity";
    case ErrorKind::Type: return "type";
    case ErrorKind::Duplicate: return "duplicate";
    case ErrorKind::Unknown: return "unknown";
    case ErrorKind::Range: return "range";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::PreconditionViolated: return "precondition-violated";
    case ErrorKind::InvalidPlan: return "invalid-plan";
    case ErrorKind::NameCollision: return "name-collision";
    case ErrorKind::StageOrder: return "stage-order";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Transport: return "transport";
    case ErrorKind::Busy: return "busy";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

namespace {

std::string format_what(ErrorKind kind, const std::string& message,
                        const std::optional<SourceLocation>& location) {
    std::string out;
    if (location) {
        out += std::to_string(location->line) + ":" + std::to_string(location->column) + ": ";
    }
    out += std::string(to_string(kind)) + " error: " + message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string message, std::optional<SourceLocation> location)
    : std::runtime_error(format_what(kind, message, location)),
      kind_(kind),
      message_(std::move(message)),
      location_(location) {}

}  // namespace p2p
