#include "p2p/planner/search.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "p2p/planner/heuristics.hpp"

namespace p2p::planner {

std::string_view to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::Unsolvable: return "unsolvable";
    case SolveStatus::ResourceLimit: return "resource-limit";
    case SolveStatus::Cancelled: return "cancelled";
    case SolveStatus::Failed: return "failed";
    }
    return "failed";
}

namespace {

using pddl::GroundTask;
using pddl::State;

constexpr std::int32_t kNone = -1;

struct Node {
    State state;
    std::int64_t g = 0;
    std::int64_t h = 0;
    std::uint32_t length = 0;
    std::int32_t parent = kNone;
    std::int32_t action = kNone;
    bool closed = false;
};

// Open-list key. Optimal modes order by (g + h, length); greedy by (h, g, length).
struct Key {
    std::int64_t primary;
    std::int64_t secondary;
    std::uint32_t length;
    std::int32_t node;

    auto tuple() const { return std::tie(primary, secondary, length); }
    bool operator>(const Key& o) const { return std::tie(primary, secondary, length, node) > std::tie(o.primary, o.secondary, o.length, o.node); }
};

class Search {
public:
    Search(const GroundTask& task, const SearchConfig& config, std::stop_token stop)
        : task_(task), config_(config), stop_(std::move(stop)) {
        labels_.reserve(task.actions.size());
        for (const auto& a : task.actions) labels_.push_back(a.label());
        if (config.mode == SearchMode::Astar)
            heuristic_.emplace(task, RelaxedHeuristic::Combine::Max);
        else if (config.mode == SearchMode::Greedy)
            heuristic_.emplace(task, RelaxedHeuristic::Combine::Add);
    }

    SolveResult run() {
        const auto start = std::chrono::steady_clock::now();
        SolveResult result;
        auto finish = [&](SolveStatus status, std::string message) {
            result.status = status;
            result.message = std::move(message);
            result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return result;
        };

        State init = task_.initial_state();
        std::int64_t h0 = evaluate(init);
        if (h0 >= kInfiniteCost) return finish(SolveStatus::Unsolvable, "goal unreachable in the delete relaxation");
        push_new(std::move(init), 0, h0, 0, kNone, kNone);

        std::int32_t best_goal = kNone;
        std::optional<Key> goal_key;
        while (!open_.empty()) {
            Key key = open_.top();
            if (goal_key && key.tuple() != goal_key->tuple()) break;
            open_.pop();
            Node& node = nodes_[static_cast<std::size_t>(key.node)];
            if (node.closed || stale(key, node)) continue;
            node.closed = true;

            if (task_.is_goal(node.state)) {
                if (best_goal == kNone || path_less(key.node, best_goal)) best_goal = key.node;
                if (config_.mode == SearchMode::Greedy) break;
                goal_key = key;
                continue;
            }
            if (goal_key) continue;

            if (stop_.stop_requested()) return finish(SolveStatus::Cancelled, "search cancelled");
            if (++result.stats.expanded > config_.node_cap)
                return finish(SolveStatus::ResourceLimit, "node cap of " + std::to_string(config_.node_cap) + " expansions reached");
            if ((result.stats.expanded & 1023U) == 0) {
                double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                if (elapsed > config_.time_cap_seconds)
                    return finish(SolveStatus::ResourceLimit, "time cap of " + std::to_string(config_.time_cap_seconds) + " s reached");
            }
            expand(key.node, result.stats);
        }

        if (best_goal == kNone) return finish(SolveStatus::Unsolvable, "reachable state space exhausted");
        Plan plan;
        plan.mode = config_.mode;
        plan.optimal = is_optimal(config_.mode);
        plan.provenance = Provenance::Internal;
        for (auto a : path(best_goal)) plan.steps.push_back(task_.actions[static_cast<std::size_t>(a)].step());
        plan.total_cost = nodes_[static_cast<std::size_t>(best_goal)].g;
        result.plan = std::move(plan);
        return finish(SolveStatus::Solved, {});
    }

private:
    std::int64_t evaluate(const State& s) { return heuristic_ ? heuristic_->evaluate(s) : 0; }

    Key key_of(std::int32_t id) const {
        const Node& n = nodes_[static_cast<std::size_t>(id)];
        if (config_.mode == SearchMode::Greedy) return {n.h, n.g, n.length, id};
        return {n.g + n.h, 0, n.length, id};
    }

    bool stale(const Key& key, const Node& node) const {
        Key now = key_of(key.node);
        (void)node;
        return now.tuple() != key.tuple();
    }

    void push_new(State s, std::int64_t g, std::int64_t h, std::uint32_t len, std::int32_t parent, std::int32_t action) {
        auto id = static_cast<std::int32_t>(nodes_.size());
        index_.emplace(s, id);
        nodes_.push_back({std::move(s), g, h, len, parent, action, false});
        open_.push(key_of(id));
    }

    std::vector<std::int32_t> path(std::int32_t id) const {
        std::vector<std::int32_t> out;
        for (auto cur = id; nodes_[static_cast<std::size_t>(cur)].parent != kNone; cur = nodes_[static_cast<std::size_t>(cur)].parent)
            out.push_back(nodes_[static_cast<std::size_t>(cur)].action);
        std::reverse(out.begin(), out.end());
        return out;
    }

    bool labels_less(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [&](std::int32_t x, std::int32_t y) {
            return labels_[static_cast<std::size_t>(x)] < labels_[static_cast<std::size_t>(y)];
        });
    }

    // (cost, length, label sequence) order between two node paths.
    bool path_less(std::int32_t a, std::int32_t b) const {
        const Node& na = nodes_[static_cast<std::size_t>(a)];
        const Node& nb = nodes_[static_cast<std::size_t>(b)];
        if (na.g != nb.g) return na.g < nb.g;
        if (na.length != nb.length) return na.length < nb.length;
        return labels_less(path(a), path(b));
    }

    void expand(std::int32_t id, SearchStats& stats) {
        const State state = nodes_[static_cast<std::size_t>(id)].state;
        const std::int64_t g = nodes_[static_cast<std::size_t>(id)].g;
        const std::uint32_t len = nodes_[static_cast<std::size_t>(id)].length;
        for (std::size_t a = 0; a < task_.actions.size(); ++a) {
            const auto& act = task_.actions[a];
            if (!task_.applicable(state, act)) continue;
            State next = state;
            for (auto p : act.del) next.reset(p);
            for (auto p : act.add) next.set(p);
            ++stats.generated;
            const std::int64_t ng = g + act.cost;
            const std::uint32_t nl = len + 1;
            auto it = index_.find(next);
            if (it == index_.end()) {
                std::int64_t h = evaluate(next);
                if (h >= kInfiniteCost) continue;
                push_new(std::move(next), ng, h, nl, id, static_cast<std::int32_t>(a));
                continue;
            }
            Node& other = nodes_[static_cast<std::size_t>(it->second)];
            if (other.closed) continue;
            bool better = ng < other.g || (ng == other.g && nl < other.length);
            if (!better && ng == other.g && nl == other.length) {
                auto candidate = path(id);
                candidate.push_back(static_cast<std::int32_t>(a));
                better = labels_less(candidate, path(it->second));
            }
            if (!better) continue;
            other.g = ng;
            other.length = nl;
            other.parent = id;
            other.action = static_cast<std::int32_t>(a);
            open_.push(key_of(it->second));
        }
    }

    const GroundTask& task_;
    SearchConfig config_;
    std::stop_token stop_;
    std::vector<std::string> labels_;
    std::optional<RelaxedHeuristic> heuristic_;
    std::vector<Node> nodes_;
    std::unordered_map<State, std::int32_t, pddl::StateHash> index_;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> open_;
};

}  // namespace

SolveResult solve(const GroundTask& task, const SearchConfig& config, std::stop_token stop) {
    return Search(task, config, std::move(stop)).run();
}

}  // namespace p2p::planner
