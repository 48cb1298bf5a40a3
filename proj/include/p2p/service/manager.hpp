#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "p2p/service/catalog.hpp"
#include "p2p/service/session.hpp"
#include "p2p/service/store.hpp"

namespace p2p::service {

class SessionNotFound : public Error {
public:
    explicit SessionNotFound(const std::string& id) : Error(ErrorKind::Unknown, "no session '" + id + "'") {}
};

class ComparisonNotAvailable : public Error {
public:
    explicit ComparisonNotAvailable(Stage stage)
        : Error(ErrorKind::StageOrder,
                "comparison not available: session is " + std::string(to_string(stage)) + ", not planned") {}
};

// Another request already holds the session.
class SessionBusy : public Error {
public:
    explicit SessionBusy(const std::string& id)
        : Error(ErrorKind::Busy, "session '" + id + "' is busy with another request; retry shortly") {}
};

// Stateless apart from the store: every operation loads the session,
// applies one change and saves it. At most one mutating operation per
// session runs at a time; a concurrent one fails with SessionBusy.
class SessionManager {
public:
    SessionManager(SessionStore store, Catalog catalog, std::shared_ptr<llm::Provider> provider,
                   PlanningSettings planning, llm::RepairPolicy policy, std::string default_model = "mock");

    Session create(SessionInputs inputs);
    Session create_from_example(const std::string& example_id, const std::string& model = {});
    Session get(const std::string& id) const;

    Session advance(const std::string& id, Stage target);
    Session edit_rules(const std::string& id, const std::vector<RuleEdit>& edits);
    Session replace_code(const std::string& id, std::string code);
    PlanComparison comparison(const std::string& id) const;

    const Catalog& catalog() const { return catalog_; }
    const std::string& default_model() const { return default_model_; }
    // Parsed inputs of an existing session, for resolving rule documents.
    ParsedInputs parsed_inputs(const std::string& id) const;

    // Replaces the clock used for timestamps (tests).
    void set_clock(std::function<std::string()> clock) { clock_ = std::move(clock); }

private:
    template <typename F>
    Session mutate(const std::string& id, F&& f);

    SessionStore store_;
    Catalog catalog_;
    std::shared_ptr<llm::Provider> provider_;
    Environment env_;
    std::string default_model_;
    std::function<std::string()> clock_;

    std::mutex locks_mutex_;
    std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

std::string utc_timestamp();
std::string new_session_id();

}  // namespace p2p::service
