#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "p2p/service/session.hpp"

namespace p2p::service {

// One JSON document per session under `root`; writes go to a temporary
// file that is renamed over the old one.
class SessionStore {
public:
    explicit SessionStore(std::filesystem::path root);

    void save(const Session& session) const;
    std::optional<Session> load(const std::string& id) const;
    std::vector<std::string> list() const;
    bool remove(const std::string& id) const;

    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path path_for(const std::string& id) const;
    std::filesystem::path root_;
};

// Session ids are [a-z0-9-], 1 to 64 characters.
bool valid_session_id(std::string_view id);

}  // namespace p2p::service
