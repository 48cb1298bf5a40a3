#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "p2p/llm/mock_provider.hpp"
#include "p2p/service/session.hpp"

namespace p2p::service {

struct CatalogEntry {
    std::string id;
    std::string area;  // "autonomous-vehicles", "elderly-care", "firefighting-rescue"
    std::string title;
    std::string domain_text;
    std::string problem_text;
    std::string rules_text;     // reference rules in the dialect
    std::string response_text;  // canned provider answer for the rule prompt
    std::vector<std::string> principles;
    std::string initial_state_notes;
    std::string assumptions;
    std::optional<int> rule_count_hint;

    SessionInputs inputs(const std::string& model = "mock") const;
};

class Catalog {
public:
    // Reads <data_dir>/catalog.json and the files it names (paths relative
    // to data_dir). Throws Io or Syntax.
    static Catalog load(const std::filesystem::path& data_dir);

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(std::string_view id) const;

private:
    std::vector<CatalogEntry> entries_;
};

// Registers every entry's canned rule response with the mock provider.
void install_fixtures(llm::MockProvider& provider, const Catalog& catalog);

}  // namespace p2p::service
