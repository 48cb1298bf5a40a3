#include "p2p/service/manager.hpp"

#include <chrono>
#include <ctime>
#include <random>

namespace p2p::service {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string new_session_id() {
    static std::mutex m;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(m);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string id;
    auto v = rng();
    for (int i = 0; i < 16; ++i, v >>= 4) id += kHex[v & 0xf];
    return id;
}

SessionManager::SessionManager(SessionStore store, Catalog catalog, std::shared_ptr<llm::Provider> provider,
                               PlanningSettings planning, llm::RepairPolicy policy, std::string default_model)
    : store_(std::move(store)),
      catalog_(std::move(catalog)),
      provider_(std::move(provider)),
      default_model_(std::move(default_model)),
      clock_(utc_timestamp) {
    env_.provider = provider_.get();
    env_.policy = policy;
    env_.planning = std::move(planning);
}

Session SessionManager::create(SessionInputs inputs) {
    if (inputs.model.empty()) inputs.model = default_model_;
    auto session = create_session(std::move(inputs), new_session_id(), clock_());
    store_.save(session);
    return session;
}

Session SessionManager::create_from_example(const std::string& example_id, const std::string& model) {
    const auto* entry = catalog_.find(example_id);
    if (!entry) throw Error(ErrorKind::Unknown, "no example '" + example_id + "'");
    return create(entry->inputs(model.empty() ? default_model_ : model));
}

Session SessionManager::get(const std::string& id) const {
    auto s = store_.load(id);
    if (!s) throw SessionNotFound(id);
    return *s;
}

ParsedInputs SessionManager::parsed_inputs(const std::string& id) const { return parse_inputs(get(id).inputs); }

template <typename F>
Session SessionManager::mutate(const std::string& id, F&& f) {
    std::mutex* m;
    {
        std::lock_guard lock(locks_mutex_);
        auto& slot = locks_[id];
        if (!slot) slot = std::make_unique<std::mutex>();
        m = slot.get();
    }
    std::unique_lock session_lock(*m, std::try_to_lock);
    if (!session_lock.owns_lock()) throw SessionBusy(id);
    Session s = get(id);
    f(s);
    store_.save(s);
    return s;
}

Session SessionManager::advance(const std::string& id, Stage target) {
    return mutate(id, [&](Session& s) { service::advance(s, target, env_, clock_()); });
}

Session SessionManager::edit_rules(const std::string& id, const std::vector<RuleEdit>& edits) {
    return mutate(id, [&](Session& s) { service::edit_rules(s, edits, clock_()); });
}

Session SessionManager::replace_code(const std::string& id, std::string code) {
    return mutate(id, [&](Session& s) { service::replace_code(s, std::move(code), clock_()); });
}

PlanComparison SessionManager::comparison(const std::string& id) const {
    auto s = get(id);
    if (s.stage != Stage::Planned || !s.comparison) throw ComparisonNotAvailable(s.stage);
    return *s.comparison;
}

}  // namespace p2p::service
