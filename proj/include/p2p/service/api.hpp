#pragma once

#include <map>
#include <string>

#include "p2p/service/manager.hpp"

namespace p2p::service {

struct ApiRequest {
    std::string method;  // upper case
    std::string path;    // without query string
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string body;  // JSON
    std::map<std::string, std::string> headers;
};

// Transport-independent router for the /api/v1 endpoints. Errors become
// {"error": {"kind", "message", "line"?, "column"?, "findings"?}} with
//   400 malformed request body      404 unknown session or route
//   409 stage order / busy / comparison not available
//   422 parse and validation errors 502 provider transport failure
//   503 planner resource limit
class Api {
public:
    explicit Api(SessionManager& manager) : manager_(manager) {}

    ApiResponse handle(const ApiRequest& request);

private:
    SessionManager& manager_;
};

}  // namespace p2p::service
