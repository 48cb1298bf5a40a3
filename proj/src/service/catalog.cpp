#include "p2p/service/catalog.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"

namespace p2p::service {

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

SessionInputs CatalogEntry::inputs(const std::string& model) const {
    SessionInputs in;
    in.context = {domain_text, problem_text, initial_state_notes, assumptions, principles, rule_count_hint};
    in.model = model;
    in.example_id = id;
    return in;
}

Catalog Catalog::load(const std::filesystem::path& data_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(data_dir / "catalog.json"));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Syntax, std::string("catalog.json: ") + e.what());
    }
    Catalog c;
    for (const auto& e : doc.at("examples")) {
        CatalogEntry entry;
        entry.id = e.at("id").get<std::string>();
        entry.area = e.at("area").get<std::string>();
        entry.title = e.at("title").get<std::string>();
        entry.domain_text = read_file(data_dir / e.at("domain_file").get<std::string>());
        entry.problem_text = read_file(data_dir / e.at("problem_file").get<std::string>());
        entry.rules_text = read_file(data_dir / e.at("rules_file").get<std::string>());
        entry.response_text = read_file(data_dir / e.at("response_file").get<std::string>());
        entry.principles = e.at("principles").get<std::vector<std::string>>();
        entry.initial_state_notes = e.value("initial_state_notes", "");
        entry.assumptions = e.value("assumptions", "");
        if (e.contains("rule_count_hint")) entry.rule_count_hint = e["rule_count_hint"].get<int>();
        c.entries_.push_back(std::move(entry));
    }
    return c;
}

const CatalogEntry* Catalog::find(std::string_view id) const {
    for (const auto& e : entries_)
        if (text::iequals(e.id, id)) return &e;
    return nullptr;
}

void install_fixtures(llm::MockProvider& provider, const Catalog& catalog) {
    for (const auto& e : catalog.entries())
        provider.add_fixture(llm::build_rule_prompt(e.inputs().context), e.response_text);
}

}  // namespace p2p::service
