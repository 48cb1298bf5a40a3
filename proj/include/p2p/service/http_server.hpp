#pragma once

#include <memory>
#include <string>

#include "p2p/service/api.hpp"
#include "p2p/service/config.hpp"

namespace httplib {
class Server;
}

namespace p2p::service {

// Binds Api to cpp-httplib. The server runs on the calling thread.
class HttpServer {
public:
    explicit HttpServer(Api& api);
    ~HttpServer();

    bool listen(const std::string& host, int port);
    // Binds to an ephemeral port and returns it, or -1.
    int bind_any_port(const std::string& host);
    bool listen_after_bind();
    void wait_until_ready() const;
    void stop();

private:
    Api& api_;
    std::unique_ptr<httplib::Server> server_;
};

// Wires store, catalog, provider and planner settings from a config.
std::unique_ptr<SessionManager> make_manager(const ServiceConfig& config);

}  // namespace p2p::service
