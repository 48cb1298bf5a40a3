#include "p2p/service/store.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

#include "p2p/service/json_codec.hpp"

namespace p2p::service {

namespace fs = std::filesystem;

bool valid_session_id(std::string_view id) {
    if (id.empty() || id.size() > 64) return false;
    for (char c : id)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-')) return false;
    return true;
}

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create session directory " + root_.string() + ": " + ec.message());
}

fs::path SessionStore::path_for(const std::string& id) const {
    if (!valid_session_id(id)) throw Error(ErrorKind::Unknown, "invalid session id '" + id + "'");
    return root_ / (id + ".json");
}

void SessionStore::save(const Session& session) const {
    static std::atomic<unsigned> counter{0};
    const auto target = path_for(session.id);
    const auto tmp = root_ / ("." + session.id + "." + std::to_string(counter++) + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        out << to_json(session).dump(2) << '\n';
        out.flush();
        if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot replace " + target.string());
    }
}

std::optional<Session> SessionStore::load(const std::string& id) const {
    if (!valid_session_id(id)) return std::nullopt;
    std::ifstream in(path_for(id), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return session_from_json(json::parse(buf.str()));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Io, "corrupt session document " + id + ": " + e.what());
    }
}

std::vector<std::string> SessionStore::list() const {
    std::vector<std::string> ids;
    for (const auto& entry : fs::directory_iterator(root_)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && entry.path().extension() == ".json" && name[0] != '.')
            ids.push_back(entry.path().stem().string());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

bool SessionStore::remove(const std::string& id) const {
    if (!valid_session_id(id)) return false;
    std::error_code ec;
    return fs::remove(path_for(id), ec);
}

}  // namespace p2p::service
