#include "p2p/llm/mock_provider.hpp"

#include <sstream>

#include <json.hpp>

#include "p2p/common/text.hpp"
#include "p2p/llm/digest.hpp"
#include "p2p/llm/prompt.hpp"

namespace p2p::llm {

std::string MockProvider::request_key(const ProviderRequest& request) {
    return sha256_hex(request.system_instructions + "\n" + request.user_content);
}

void MockProvider::add_fixture(const ProviderRequest& request, std::string response) {
    add_fixture_by_key(request_key(request), std::move(response));
}

void MockProvider::add_fixture_by_key(std::string key, std::string response) {
    std::lock_guard lock(mutex_);
    fixtures_[std::move(key)] = std::move(response);
}

void MockProvider::script(std::vector<Reply> replies) {
    std::lock_guard lock(mutex_);
    for (auto& r : replies) scripted_.push_back(std::move(r));
}

int MockProvider::call_count() const {
    std::lock_guard lock(mutex_);
    return static_cast<int>(requests_.size());
}

std::vector<ProviderRequest> MockProvider::requests() const {
    std::lock_guard lock(mutex_);
    return requests_;
}

std::string MockProvider::complete(const ProviderRequest& request) {
    std::unique_lock lock(mutex_);
    requests_.push_back(request);
    if (!scripted_.empty()) {
        Reply r = std::move(scripted_.front());
        scripted_.pop_front();
        if (r.transport_failure) throw TransportError(r.text.empty() ? "scripted transport failure" : r.text);
        return r.text;
    }
    if (auto it = fixtures_.find(request_key(request)); it != fixtures_.end()) return it->second;
    lock.unlock();

    const auto& u = request.user_content;
    const auto b = u.find(kRulesBegin);
    const auto e = u.rfind(kRulesEnd);
    if (b != std::string::npos && e != std::string::npos && e > b) {
        const auto start = b + kRulesBegin.size();
        return "```pddl\n" + render_rules_document_as_dialect(u.substr(start, e - start)) + "```\n";
    }
    return "```json\n{\"rules\": []}\n```\n";
}

std::string render_rules_document_as_dialect(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Syntax, std::string("rules document: ") + e.what());
    }
    std::ostringstream out;
    out << "(:ethical-rules";
    for (const auto& r : doc.value("rules", nlohmann::json::array())) {
        out << "\n  (rule " << r.value("id", "") << "\n    :action " << r.value("action", "");
        std::vector<std::string> lits;
        const auto cond = r.value("condition", nlohmann::json::array());
        if (cond.is_string()) lits.push_back(cond.get<std::string>());
        else
            for (const auto& l : cond) lits.push_back(l.get<std::string>());
        if (!lits.empty()) out << "\n    :condition (and " << text::join(lits, " ") << ")";
        out << "\n    :features (";
        bool first = true;
        for (const auto& f : r.value("features", nlohmann::json::array())) {
            if (!first) out << " ";
            first = false;
            out << "(" << f.value("name", "") << " " << f.value("polarity", "") << " " << f.value("rank", 1) << ")";
        }
        out << ")";
        for (const char* key : {"statement", "principle", "explanation"})
            if (r.contains(key) && r[key].is_string() && !r[key].get<std::string>().empty())
                out << "\n    :" << key << " " << text::quote(r[key].get<std::string>());
        out << ")";
    }
    out << ")\n";
    return out.str();
}

}  // namespace p2p::llm
