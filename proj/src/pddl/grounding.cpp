#include "p2p/pddl/grounding.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include <omp.h>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"

namespace p2p::pddl {

std::string GroundAction::label() const {
    std::string out = schema;
    for (const auto& a : args) out += " " + a;
    return out;
}

std::optional<PropId> GroundTask::find(const Atom& atom) const {
    auto it = index.find(atom);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

State GroundTask::initial_state() const {
    State s(propositions.size());
    for (PropId p : init) s.set(p);
    return s;
}

bool GroundTask::is_goal(const State& s) const {
    for (PropId p : goal_pos)
        if (!s.test(p)) return false;
    for (PropId p : goal_neg)
        if (s.test(p)) return false;
    return true;
}

bool GroundTask::applicable(const State& s, const GroundAction& a) const {
    for (PropId p : a.pre_pos)
        if (!s.test(p)) return false;
    for (PropId p : a.pre_neg)
        if (s.test(p)) return false;
    return true;
}

State apply_action(const GroundTask& task, const State& state, const GroundAction& action) {
    for (PropId p : action.pre_pos)
        if (!state.test(p))
            throw Error(ErrorKind::PreconditionViolated,
                        "(" + action.label() + "): precondition " + task.describe(p) + " does not hold");
    for (PropId p : action.pre_neg)
        if (state.test(p))
            throw Error(ErrorKind::PreconditionViolated,
                        "(" + action.label() + "): precondition (not " + task.describe(p) + ") does not hold");
    State next = state;
    for (PropId p : action.del) next.reset(p);
    for (PropId p : action.add) next.set(p);
    return next;
}

std::vector<std::string> static_predicates(const PlanningDomain& domain) {
    std::set<std::string> fluent;
    for (const auto& a : domain.actions) {
        for (const auto& x : a.add_effects) fluent.insert(x.predicate);
        for (const auto& x : a.delete_effects) fluent.insert(x.predicate);
    }
    std::vector<std::string> out;
    for (const auto& p : domain.predicates)
        if (!fluent.count(p.name)) out.push_back(p.name);
    return out;
}

namespace {

using Assignment = std::vector<std::uint32_t>;

struct StaticCheck {
    Atom atom;
    // Highest parameter index the atom mentions; -1 when fully constant.
    int last_param = -1;
};

struct SchemaPlan {
    const ActionSchema* schema = nullptr;
    std::vector<std::vector<std::uint32_t>> candidates;
    std::vector<StaticCheck> statics;
};

struct PendingAction {
    std::vector<std::string> args;
    std::vector<Atom> pre_pos, pre_neg, add, del;
};

class Grounder {
public:
    Grounder(const PlanningDomain& d, const PlanningProblem& p, const GroundingOptions& o)
        : domain_(d), problem_(p), options_(o) {
        objects_ = d.constants;
        objects_.insert(objects_.end(), p.objects.begin(), p.objects.end());
        init_.insert(p.init.begin(), p.init.end());
        auto statics = static_predicates(d);
        std::set<std::string> static_set(statics.begin(), statics.end());
        for (const auto& a : d.actions) {
            SchemaPlan plan;
            plan.schema = &a;
            for (const auto& param : a.parameters) {
                std::vector<std::uint32_t> c;
                for (std::uint32_t i = 0; i < objects_.size(); ++i)
                    if (d.is_subtype(objects_[i].type, param.type)) c.push_back(i);
                plan.candidates.push_back(std::move(c));
            }
            if (o.prune_static_preconditions) {
                for (const auto& lit : a.precondition) {
                    if (lit.negated || !static_set.count(lit.atom.predicate)) continue;
                    StaticCheck check{lit.atom, -1};
                    for (const auto& term : lit.atom.args) {
                        if (!is_variable(term)) continue;
                        for (std::size_t k = 0; k < a.parameters.size(); ++k)
                            if (a.parameters[k].name == term) check.last_param = std::max(check.last_param, static_cast<int>(k));
                    }
                    plan.statics.push_back(std::move(check));
                }
            }
            plans_.push_back(std::move(plan));
        }
    }

    const std::vector<SchemaPlan>& plans() const { return plans_; }
    std::size_t cap() const { return options_.max_ground_actions; }

    std::vector<std::string> names(const Assignment& asg) const {
        std::vector<std::string> out;
        out.reserve(asg.size());
        for (auto i : asg) out.push_back(objects_[i].name);
        return out;
    }

    // Static literals whose last parameter is `upto` (or all of them when
    // upto < 0 for constant-only atoms) hold in init.
    bool statics_hold(const SchemaPlan& plan, const Assignment& asg, int upto, bool all) const {
        for (const auto& check : plan.statics) {
            if (!all && check.last_param != upto) continue;
            Atom ground = substitute(check.atom, plan.schema->parameters, names_prefix(asg));
            if (!init_.count(ground)) return false;
        }
        return true;
    }

    PendingAction pending(const SchemaPlan& plan, const Assignment& asg) const {
        PendingAction out;
        out.args = names(asg);
        const auto& s = *plan.schema;
        for (const auto& lit : s.precondition)
            (lit.negated ? out.pre_neg : out.pre_pos).push_back(substitute(lit.atom, s.parameters, out.args));
        for (const auto& a : s.add_effects) out.add.push_back(substitute(a, s.parameters, out.args));
        for (const auto& a : s.delete_effects) out.del.push_back(substitute(a, s.parameters, out.args));
        return out;
    }

    GroundTask assemble(const std::vector<std::vector<PendingAction>>& per_schema) const {
        std::size_t total = 0;
        for (const auto& v : per_schema) total += v.size();
        if (total > options_.max_ground_actions)
            throw Error(ErrorKind::ResourceLimit, "grounding produced more than " +
                                                      std::to_string(options_.max_ground_actions) + " ground actions");
        GroundTask task;
        auto intern = [&task](const Atom& atom) {
            auto [it, inserted] = task.index.emplace(atom, static_cast<PropId>(task.propositions.size()));
            if (inserted) task.propositions.push_back(atom);
            return it->second;
        };
        auto intern_all = [&](const std::vector<Atom>& atoms) {
            std::vector<PropId> ids;
            ids.reserve(atoms.size());
            for (const auto& a : atoms) ids.push_back(intern(a));
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            return ids;
        };
        task.init = intern_all(problem_.init);
        for (const auto& lit : problem_.goal) (lit.negated ? task.goal_neg : task.goal_pos).push_back(intern(lit.atom));
        std::sort(task.goal_pos.begin(), task.goal_pos.end());
        std::sort(task.goal_neg.begin(), task.goal_neg.end());
        task.actions.reserve(total);
        for (std::size_t s = 0; s < per_schema.size(); ++s) {
            for (const auto& pa : per_schema[s]) {
                GroundAction g;
                g.schema = plans_[s].schema->name;
                g.args = pa.args;
                g.pre_pos = intern_all(pa.pre_pos);
                g.pre_neg = intern_all(pa.pre_neg);
                g.add = intern_all(pa.add);
                g.del = intern_all(pa.del);
                std::erase_if(g.del, [&](PropId p) { return std::binary_search(g.add.begin(), g.add.end(), p); });
                g.cost = plans_[s].schema->cost;
                task.actions.push_back(std::move(g));
            }
        }
        return task;
    }

private:
    // Binding vector sized to the schema; unbound slots are left empty and
    // never read because checks only run once their last parameter is set.
    std::vector<std::string> names_prefix(const Assignment& asg) const {
        std::vector<std::string> out;
        out.reserve(asg.size());
        for (auto i : asg) out.push_back(i == kUnbound ? std::string() : objects_[i].name);
        return out;
    }

public:
    static constexpr std::uint32_t kUnbound = 0xffffffffU;

private:
    const PlanningDomain& domain_;
    const PlanningProblem& problem_;
    GroundingOptions options_;
    std::vector<TypedName> objects_;
    std::set<Atom> init_;
    std::vector<SchemaPlan> plans_;
};

// Depth-first enumeration with static checks applied as soon as the last
// parameter they mention is bound.
void enumerate(const Grounder& g, const SchemaPlan& plan, Assignment& asg, std::size_t depth,
               std::vector<PendingAction>& out, std::atomic<std::size_t>& produced) {
    if (produced.load(std::memory_order_relaxed) > g.cap()) return;
    if (depth == asg.size()) {
        out.push_back(g.pending(plan, asg));
        produced.fetch_add(1, std::memory_order_relaxed);
        return;
    }
    for (auto candidate : plan.candidates[depth]) {
        asg[depth] = candidate;
        if (g.statics_hold(plan, asg, static_cast<int>(depth), false)) enumerate(g, plan, asg, depth + 1, out, produced);
    }
    asg[depth] = Grounder::kUnbound;
}

}  // namespace

GroundTask ground_task(const PlanningDomain& domain, const PlanningProblem& problem, const GroundingOptions& options) {
    Grounder g(domain, problem, options);
    const auto& plans = g.plans();
    std::vector<std::vector<PendingAction>> per_schema(plans.size());
    std::atomic<std::size_t> produced{0};

    // Work items: (schema, first-parameter candidate) pairs, or the whole
    // schema when it has no parameters.
    struct Item {
        std::size_t schema;
        std::size_t first;  // index into candidates[0]; ignored for nullary schemas
    };
    std::vector<Item> items;
    for (std::size_t s = 0; s < plans.size(); ++s) {
        Assignment none(plans[s].schema->parameters.size(), Grounder::kUnbound);
        if (!g.statics_hold(plans[s], none, -1, false)) continue;
        if (plans[s].candidates.empty()) items.push_back({s, 0});
        else
            for (std::size_t c = 0; c < plans[s].candidates[0].size(); ++c) items.push_back({s, c});
    }
    std::vector<std::vector<PendingAction>> results(items.size());

    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(items.size()); ++i) {
        const Item& item = items[static_cast<std::size_t>(i)];
        const SchemaPlan& plan = plans[item.schema];
        Assignment asg(plan.schema->parameters.size(), Grounder::kUnbound);
        auto& out = results[static_cast<std::size_t>(i)];
        if (asg.empty()) {
            out.push_back(g.pending(plan, asg));
            produced.fetch_add(1, std::memory_order_relaxed);
            continue;
        }
        asg[0] = plan.candidates[0][item.first];
        if (g.statics_hold(plan, asg, 0, false)) enumerate(g, plan, asg, 1, out, produced);
    }

    for (std::size_t i = 0; i < items.size(); ++i) {
        auto& dst = per_schema[items[i].schema];
        std::move(results[i].begin(), results[i].end(), std::back_inserter(dst));
    }
    return g.assemble(per_schema);
}

namespace reference {

GroundTask ground_task_serial(const PlanningDomain& domain, const PlanningProblem& problem,
                              const GroundingOptions& options) {
    Grounder g(domain, problem, options);
    const auto& plans = g.plans();
    std::vector<std::vector<PendingAction>> per_schema(plans.size());
    std::size_t kept = 0;
    for (std::size_t s = 0; s < plans.size(); ++s) {
        const SchemaPlan& plan = plans[s];
        const std::size_t n = plan.candidates.size();
        bool empty_domain = false;
        for (const auto& c : plan.candidates) empty_domain = empty_domain || c.empty();
        if (empty_domain) continue;
        // Odometer over the full cartesian product, last parameter fastest.
        std::vector<std::size_t> digits(n, 0);
        while (true) {
            Assignment asg(n);
            for (std::size_t k = 0; k < n; ++k) asg[k] = plan.candidates[k][digits[k]];
            if (g.statics_hold(plan, asg, 0, true)) {
                per_schema[s].push_back(g.pending(plan, asg));
                if (++kept > options.max_ground_actions)
                    throw Error(ErrorKind::ResourceLimit, "grounding produced more than " +
                                                              std::to_string(options.max_ground_actions) +
                                                              " ground actions");
            }
            std::size_t k = n;
            while (k > 0) {
                --k;
                if (++digits[k] < plan.candidates[k].size()) break;
                digits[k] = 0;
                if (k == 0) {
                    k = n + 1;
                    break;
                }
            }
            if (n == 0 || k == n + 1) break;
        }
    }
    return g.assemble(per_schema);
}

}  // namespace reference

}  // namespace p2p::pddl
