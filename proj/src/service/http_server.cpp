#include "p2p/service/http_server.hpp"

#include <httplib.h>

#include "p2p/llm/http_provider.hpp"
#include "p2p/llm/mock_provider.hpp"

namespace p2p::service {

HttpServer::HttpServer(Api& api) : api_(api), server_(std::make_unique<httplib::Server>()) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        auto out = api_.handle({req.method, req.path, req.body});
        res.status = out.status;
        for (const auto& [k, v] : out.headers) res.set_header(k, v);
        res.set_content(out.body, "application/json");
    };
    const std::string pattern = R"(/api/v1/.*)";
    server_->Get(pattern, forward);
    server_->Post(pattern, forward);
    server_->Put(pattern, forward);
    server_->Patch(pattern, forward);
    server_->Delete(pattern, forward);
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

int HttpServer::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

void HttpServer::stop() { server_->stop(); }

std::unique_ptr<SessionManager> make_manager(const ServiceConfig& config) {
    validate_config(config);
    auto catalog = Catalog::load(config.data_dir);
    std::shared_ptr<llm::Provider> provider;
    if (config.provider == "http") {
        llm::HttpProviderConfig http;
        http.base_url = config.provider_base_url;
        provider = std::make_shared<llm::HttpProvider>(http);
    } else {
        auto mock = std::make_shared<llm::MockProvider>();
        install_fixtures(*mock, catalog);
        provider = mock;
    }
    return std::make_unique<SessionManager>(SessionStore(config.storage_dir), std::move(catalog), std::move(provider),
                                            config.planning(), config.repair_policy(), config.default_model);
}

}  // namespace p2p::service
