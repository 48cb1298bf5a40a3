#include "p2p/pddl/parser.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "p2p/common/text.hpp"

namespace p2p::pddl {

namespace {

struct TypedEntry {
    std::string name;
    std::string type;
    SourceLocation location;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message, const SExpr& at) {
    throw Error(kind, message, at.location);
}

const SExpr& expect_list(const SExpr& e, std::string_view what) {
    if (!e.is_list()) fail(ErrorKind::Syntax, "expected " + std::string(what), e);
    return e;
}

const std::string& expect_symbol(const SExpr& e, std::string_view what) {
    if (!e.is_symbol()) fail(ErrorKind::Syntax, "expected " + std::string(what), e);
    return e.text;
}

// `a b - t c` style lists. Untyped names default to "object".
std::vector<TypedEntry> parse_typed_list(const std::vector<SExpr>& items, std::size_t start,
                                         bool variables) {
    std::vector<TypedEntry> out;
    std::size_t pending_from = 0;
    for (std::size_t i = start; i < items.size(); ++i) {
        const SExpr& item = items[i];
        if (item.is_symbol() && item.text == "-") {
            if (i + 1 >= items.size()) fail(ErrorKind::Syntax, "missing type after '-'", item);
            const SExpr& type = items[i + 1];
            if (type.is_list()) {
                if (type.head() == "either") fail(ErrorKind::Unsupported, "unsupported construct 'either' types", type);
                fail(ErrorKind::Syntax, "expected type name after '-'", type);
            }
            if (pending_from == out.size()) fail(ErrorKind::Syntax, "type given without names", item);
            for (std::size_t k = pending_from; k < out.size(); ++k) out[k].type = type.text;
            pending_from = out.size();
            ++i;
            continue;
        }
        const std::string& name = expect_symbol(item, variables ? "variable" : "name");
        if (variables && !is_variable(name)) fail(ErrorKind::Syntax, "expected variable, got '" + name + "'", item);
        if (!variables && is_variable(name)) fail(ErrorKind::Syntax, "unexpected variable '" + name + "'", item);
        out.push_back({name, std::string(kRootType), item.location});
    }
    return out;
}

std::string canonical_type(const PlanningDomain& d, const std::string& name, const SExpr& at) {
    if (text::iequals(name, kRootType)) return std::string(kRootType);
    for (const auto& t : d.types)
        if (text::iequals(t.name, name)) return t.name;
    fail(ErrorKind::Unknown, "unknown type '" + name + "'", at);
}

std::string canonical_type(const PlanningDomain& d, const std::string& name, SourceLocation loc) {
    SExpr at;
    at.location = loc;
    return canonical_type(d, name, at);
}

void reject_construct(const SExpr& e) {
    std::string h = e.head();
    if (h == "forall" || h == "exists" || h == "or" || h == "imply" || h == "when" || h == "preference")
        fail(ErrorKind::Unsupported, "unsupported construct '" + h + "'", e);
    if (h == "=") fail(ErrorKind::Unsupported, "unsupported construct '=' (equality)", e);
    if (h == "<" || h == ">" || h == "<=" || h == ">=")
        fail(ErrorKind::Unsupported, "unsupported construct '" + h + "' (numeric comparison)", e);
}

Atom parse_atom(const SExpr& e, const ConditionScope& scope) {
    expect_list(e, "atom");
    if (e.items.empty()) fail(ErrorKind::Syntax, "empty atom", e);
    reject_construct(e);
    const std::string& pred_name = expect_symbol(e.items.front(), "predicate name");
    const PredicateDecl* pred = scope.domain->find_predicate(pred_name);
    if (!pred) fail(ErrorKind::Unknown, "unknown predicate '" + pred_name + "'", e);
    Atom atom{pred->name, {}};
    if (e.items.size() - 1 != pred->parameters.size()) {
        std::string shown = "(" + pred_name;
        for (std::size_t i = 1; i < e.items.size(); ++i)
            shown += " " + (e.items[i].is_symbol() ? e.items[i].text : std::string("..."));
        shown += ")";
        fail(ErrorKind::Arity, "arity mismatch: " + shown + " but '" + pred->name + "' takes " +
                                   std::to_string(pred->parameters.size()) + " argument(s)",
             e);
    }
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        const std::string& term = expect_symbol(e.items[i], "term");
        const std::string& expected = pred->parameters[i - 1].type;
        if (is_variable(term)) {
            const TypedName* param = scope.action ? scope.action->find_parameter(term) : nullptr;
            if (!param) fail(ErrorKind::Unknown, "unknown variable '" + term + "'", e.items[i]);
            if (!scope.domain->types_overlap(param->type, expected))
                fail(ErrorKind::Type, "type mismatch: '" + param->name + "' of type '" + param->type +
                                          "' used where '" + expected + "' is expected in " + pred->name,
                     e.items[i]);
            atom.args.push_back(param->name);
            continue;
        }
        const TypedName* constant = scope.domain->find_constant(term);
        if (!constant && scope.problem) constant = scope.problem->find_object(term);
        if (!constant) {
            if (scope.require_known_constants) fail(ErrorKind::Unknown, "unknown object '" + term + "'", e.items[i]);
            atom.args.push_back(term);
            continue;
        }
        if (!scope.domain->types_overlap(constant->type, expected))
            fail(ErrorKind::Type, "type mismatch: '" + constant->name + "' of type '" + constant->type +
                                      "' used where '" + expected + "' is expected in " + pred->name,
                 e.items[i]);
        atom.args.push_back(constant->name);
    }
    return atom;
}

void collect_condition(const SExpr& e, const ConditionScope& scope, std::vector<Literal>& out) {
    expect_list(e, "condition");
    if (e.items.empty()) return;
    std::string h = e.head();
    if (h == "and") {
        for (std::size_t i = 1; i < e.items.size(); ++i) collect_condition(e.items[i], scope, out);
        return;
    }
    if (h == "not") {
        if (e.items.size() != 2) fail(ErrorKind::Syntax, "'not' takes exactly one argument", e);
        const SExpr& inner = expect_list(e.items[1], "atom after 'not'");
        std::string ih = inner.head();
        if (ih == "and" || ih == "not") fail(ErrorKind::Unsupported, "unsupported construct 'not' over '" + ih + "'", inner);
        out.push_back({parse_atom(inner, scope), true});
        return;
    }
    out.push_back({parse_atom(e, scope), false});
}

std::int64_t parse_cost_value(const SExpr& e) {
    if (!e.is_symbol()) fail(ErrorKind::Unsupported, "unsupported construct: non-constant cost expression", e);
    std::int64_t value = 0;
    const auto* first = e.text.data();
    const auto* last = first + e.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        // Accept "3.0"-style integral decimals written by some generators.
        double d = 0;
        auto [p2, ec2] = std::from_chars(first, last, d);
        if (ec2 != std::errc() || p2 != last || d != static_cast<double>(static_cast<std::int64_t>(d)))
            fail(ErrorKind::Syntax, "cost must be a non-negative integer, got '" + e.text + "'", e);
        value = static_cast<std::int64_t>(d);
    }
    if (value < 0) fail(ErrorKind::Range, "cost must be non-negative, got " + e.text, e);
    return value;
}

bool is_total_cost(const SExpr& e) {
    return e.is_list() && e.items.size() == 1 && e.items[0].is_keyword("total-cost");
}

struct EffectParse {
    std::vector<Atom> adds;
    std::vector<Atom> deletes;
    std::int64_t cost = 0;
    bool has_cost = false;
};

void collect_effect(const SExpr& e, const ConditionScope& scope, EffectParse& out) {
    expect_list(e, "effect");
    if (e.items.empty()) return;
    std::string h = e.head();
    if (h == "and") {
        for (std::size_t i = 1; i < e.items.size(); ++i) collect_effect(e.items[i], scope, out);
        return;
    }
    if (h == "not") {
        if (e.items.size() != 2) fail(ErrorKind::Syntax, "'not' takes exactly one argument", e);
        out.deletes.push_back(parse_atom(expect_list(e.items[1], "atom"), scope));
        return;
    }
    if (h == "increase") {
        if (e.items.size() != 3 || !is_total_cost(e.items[1]))
            fail(ErrorKind::Unsupported, "unsupported construct 'increase' on a fluent other than (total-cost)", e);
        out.cost += parse_cost_value(e.items[2]);
        out.has_cost = true;
        return;
    }
    if (h == "decrease" || h == "assign" || h == "scale-up" || h == "scale-down")
        fail(ErrorKind::Unsupported, "unsupported construct '" + h + "'", e);
    if (h == "when") fail(ErrorKind::Unsupported, "unsupported construct 'when' (conditional effects)", e);
    out.adds.push_back(parse_atom(e, scope));
}

template <typename T>
void dedupe(std::vector<T>& v) {
    std::vector<T> out;
    for (auto& x : v)
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
    v = std::move(out);
}

const SExpr& find_define(const std::vector<SExpr>& forms, std::string_view kind) {
    const SExpr* define = nullptr;
    for (const auto& f : forms) {
        if (f.head() == "define") {
            if (define) fail(ErrorKind::Syntax, "more than one (define ...) form", f);
            define = &f;
        } else if (f.head() == ":ethical-rules") {
            continue;
        } else {
            fail(ErrorKind::Syntax, "expected (define ...)", f);
        }
    }
    if (!define) throw Error(ErrorKind::Syntax, "missing (define (" + std::string(kind) + " ...))", SourceLocation{1, 1});
    if (define->items.size() < 2 || define->items[1].head() != kind || define->items[1].items.size() != 2 ||
        !define->items[1].items[1].is_symbol())
        fail(ErrorKind::Syntax, "expected (" + std::string(kind) + " <name>)", *define);
    return *define;
}

void parse_types(const SExpr& section, PlanningDomain& d) {
    auto entries = parse_typed_list(section.items, 1, false);
    std::vector<std::pair<std::string, SourceLocation>> implicit;
    for (const auto& e : entries) {
        if (text::iequals(e.name, kRootType)) continue;
        for (const auto& t : d.types)
            if (text::iequals(t.name, e.name)) throw Error(ErrorKind::Duplicate, "duplicate type '" + e.name + "'", e.location);
        d.types.push_back({e.name, e.type});
    }
    // Parents used but never declared become children of object.
    for (const auto& e : entries) {
        if (text::iequals(e.type, kRootType) || d.has_type(e.type)) continue;
        d.types.push_back({e.type, std::string(kRootType)});
    }
    for (auto& t : d.types) {
        if (text::iequals(t.parent, kRootType)) {
            t.parent = std::string(kRootType);
            continue;
        }
        for (const auto& other : d.types)
            if (text::iequals(other.name, t.parent)) t.parent = other.name;
    }
    for (const auto& t : d.types) {
        std::string current = t.parent;
        for (std::size_t steps = 0; !text::iequals(current, kRootType); ++steps) {
            if (steps > d.types.size() || text::iequals(current, t.name))
                fail(ErrorKind::Type, "cyclic type hierarchy at '" + t.name + "'", section);
            auto it = std::find_if(d.types.begin(), d.types.end(),
                                   [&](const TypeDecl& x) { return text::iequals(x.name, current); });
            current = it->parent;
        }
    }
}

void add_requirement(PlanningDomain& d, const std::string& flag) {
    if (!d.has_requirement(flag)) d.requirements.push_back(flag);
}

void parse_requirements(const SExpr& section, PlanningDomain& d) {
    static const std::set<std::string> kSupported = {":strips", ":typing", ":negative-preconditions", ":action-costs"};
    for (std::size_t i = 1; i < section.items.size(); ++i) {
        std::string flag = text::to_lower(expect_symbol(section.items[i], "requirement flag"));
        if (!kSupported.count(flag)) fail(ErrorKind::Unsupported, "unsupported construct: requirement '" + flag + "'", section.items[i]);
        add_requirement(d, flag);
    }
}

void parse_functions(const SExpr& section, PlanningDomain& d) {
    for (std::size_t i = 1; i < section.items.size(); ++i) {
        const SExpr& item = section.items[i];
        if (item.is_symbol() && (item.text == "-")) {
            if (i + 1 < section.items.size() && section.items[i + 1].is_keyword("number")) {
                ++i;
                continue;
            }
            fail(ErrorKind::Unsupported, "unsupported construct: non-number function type", item);
        }
        if (!is_total_cost(item)) {
            std::string name = item.is_list() && !item.items.empty() && item.items[0].is_symbol() ? item.items[0].text : "?";
            fail(ErrorKind::Unsupported, "unsupported construct: numeric fluent '" + name + "'", item);
        }
    }
    add_requirement(d, ":action-costs");
}

ActionSchema parse_action(const SExpr& section, const PlanningDomain& d, EffectParse& effects_out) {
    if (section.items.size() < 2) fail(ErrorKind::Syntax, "action without name", section);
    ActionSchema a;
    a.name = expect_symbol(section.items[1], "action name");
    const SExpr* params = nullptr;
    const SExpr* pre = nullptr;
    const SExpr* eff = nullptr;
    for (std::size_t i = 2; i < section.items.size(); i += 2) {
        const SExpr& key = section.items[i];
        if (!key.is_symbol()) fail(ErrorKind::Syntax, "expected action keyword", key);
        if (i + 1 >= section.items.size()) fail(ErrorKind::Syntax, "missing value for '" + key.text + "'", key);
        const SExpr& value = section.items[i + 1];
        std::string k = text::to_lower(key.text);
        const SExpr** slot = nullptr;
        if (k == ":parameters") slot = &params;
        else if (k == ":precondition") slot = &pre;
        else if (k == ":effect") slot = &eff;
        else if (k == ":duration") fail(ErrorKind::Unsupported, "unsupported construct ':duration'", key);
        else fail(ErrorKind::Syntax, "unknown action keyword '" + key.text + "'", key);
        if (*slot) fail(ErrorKind::Duplicate, "duplicate '" + key.text + "' in action " + a.name, key);
        *slot = &value;
    }
    if (params) {
        expect_list(*params, ":parameters list");
        for (auto& e : parse_typed_list(params->items, 0, true)) {
            if (a.find_parameter(e.name)) throw Error(ErrorKind::Duplicate, "duplicate parameter '" + e.name + "'", e.location);
            a.parameters.push_back({e.name, canonical_type(d, e.type, e.location)});
        }
    }
    ConditionScope scope{&d, &a, nullptr, true};
    if (pre) a.precondition = parse_condition(*pre, scope);
    if (eff) collect_effect(*eff, scope, effects_out);
    dedupe(a.precondition);
    dedupe(effects_out.adds);
    dedupe(effects_out.deletes);
    // Add wins over delete for the same atom.
    std::erase_if(effects_out.deletes, [&](const Atom& x) {
        return std::find(effects_out.adds.begin(), effects_out.adds.end(), x) != effects_out.adds.end();
    });
    a.add_effects = effects_out.adds;
    a.delete_effects = effects_out.deletes;
    return a;
}

}  // namespace

std::vector<Literal> parse_condition(const SExpr& expr, const ConditionScope& scope) {
    std::vector<Literal> out;
    collect_condition(expr, scope, out);
    return out;
}

PlanningDomain parse_domain(std::string_view source) {
    auto forms = read_sexprs(source);
    const SExpr& define = find_define(forms, "domain");
    PlanningDomain d;
    d.name = define.items[1].items[1].text;

    std::vector<const SExpr*> actions;
    const SExpr *types = nullptr, *constants = nullptr, *predicates = nullptr;
    std::vector<const SExpr*> functions;
    for (std::size_t i = 2; i < define.items.size(); ++i) {
        const SExpr& section = expect_list(define.items[i], "domain section");
        std::string h = section.head();
        auto once = [&](const SExpr*& slot) {
            if (slot) fail(ErrorKind::Duplicate, "duplicate section '" + h + "'", section);
            slot = &section;
        };
        if (h == ":requirements") parse_requirements(section, d);
        else if (h == ":types") once(types);
        else if (h == ":constants") once(constants);
        else if (h == ":predicates") once(predicates);
        else if (h == ":functions") functions.push_back(&section);
        else if (h == ":action") actions.push_back(&section);
        else if (h == ":durative-action" || h == ":derived" || h == ":constraints" || h == ":process" || h == ":event")
            fail(ErrorKind::Unsupported, "unsupported construct '" + h + "'", section);
        else
            fail(ErrorKind::Syntax, "unknown domain section '" + (h.empty() ? std::string("()") : h) + "'", section);
    }
    if (types) parse_types(*types, d);
    if (constants) {
        for (auto& e : parse_typed_list(constants->items, 1, false)) {
            if (d.find_constant(e.name)) throw Error(ErrorKind::Duplicate, "duplicate constant '" + e.name + "'", e.location);
            d.constants.push_back({e.name, canonical_type(d, e.type, e.location)});
        }
    }
    if (predicates) {
        for (std::size_t i = 1; i < predicates->items.size(); ++i) {
            const SExpr& p = expect_list(predicates->items[i], "predicate declaration");
            if (p.items.empty()) fail(ErrorKind::Syntax, "empty predicate declaration", p);
            PredicateDecl decl;
            decl.name = expect_symbol(p.items[0], "predicate name");
            if (d.find_predicate(decl.name)) fail(ErrorKind::Duplicate, "duplicate predicate '" + decl.name + "'", p);
            for (auto& e : parse_typed_list(p.items, 1, true)) {
                for (const auto& q : decl.parameters)
                    if (text::iequals(q.name, e.name))
                        throw Error(ErrorKind::Duplicate, "duplicate parameter '" + e.name + "'", e.location);
                decl.parameters.push_back({e.name, canonical_type(d, e.type, e.location)});
            }
            d.predicates.push_back(std::move(decl));
        }
    }
    for (const SExpr* f : functions) parse_functions(*f, d);

    std::vector<EffectParse> effects(actions.size());
    bool any_cost = false;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        ActionSchema a = parse_action(*actions[i], d, effects[i]);
        if (d.find_action(a.name)) fail(ErrorKind::Duplicate, "duplicate action '" + a.name + "'", *actions[i]);
        any_cost = any_cost || effects[i].has_cost;
        d.actions.push_back(std::move(a));
    }
    if (any_cost) add_requirement(d, ":action-costs");
    const bool costed = d.uses_action_costs();
    for (std::size_t i = 0; i < d.actions.size(); ++i)
        d.actions[i].cost = costed ? effects[i].cost : 1;
    return d;
}

PlanningProblem parse_problem(std::string_view source, const PlanningDomain& domain, std::vector<Diagnostic>* warnings) {
    auto forms = read_sexprs(source);
    const SExpr& define = find_define(forms, "problem");
    PlanningProblem p;
    p.name = define.items[1].items[1].text;

    const SExpr *objects = nullptr, *init = nullptr, *goal = nullptr;
    for (std::size_t i = 2; i < define.items.size(); ++i) {
        const SExpr& section = expect_list(define.items[i], "problem section");
        std::string h = section.head();
        auto once = [&](const SExpr*& slot) {
            if (slot) fail(ErrorKind::Duplicate, "duplicate section '" + h + "'", section);
            slot = &section;
        };
        if (h == ":domain") {
            if (section.items.size() != 2) fail(ErrorKind::Syntax, "expected (:domain <name>)", section);
            p.domain_name = expect_symbol(section.items[1], "domain name");
            if (!text::iequals(p.domain_name, domain.name) && warnings)
                warnings->push_back({"problem names domain '" + p.domain_name + "' but domain is '" + domain.name + "'",
                                     section.location});
        } else if (h == ":requirements") {
            continue;
        } else if (h == ":objects") {
            once(objects);
        } else if (h == ":init") {
            once(init);
        } else if (h == ":goal") {
            once(goal);
        } else if (h == ":metric") {
            if (section.items.size() != 3 || !section.items[1].is_keyword("minimize") || !is_total_cost(section.items[2]))
                fail(ErrorKind::Unsupported, "unsupported construct: only (:metric minimize (total-cost)) is supported", section);
            p.metric_total_cost = true;
        } else if (h == ":constraints") {
            fail(ErrorKind::Unsupported, "unsupported construct ':constraints'", section);
        } else {
            fail(ErrorKind::Syntax, "unknown problem section '" + (h.empty() ? std::string("()") : h) + "'", section);
        }
    }
    if (p.domain_name.empty()) p.domain_name = domain.name;

    if (objects) {
        for (auto& e : parse_typed_list(objects->items, 1, false)) {
            if (p.find_object(e.name) || domain.find_constant(e.name))
                throw Error(ErrorKind::Duplicate, "duplicate object '" + e.name + "'", e.location);
            p.objects.push_back({e.name, canonical_type(domain, e.type, e.location)});
        }
    }

    ConditionScope scope{&domain, nullptr, &p, true};
    auto check_ground = [&](const Atom& atom, const SExpr& at) {
        const PredicateDecl* pred = domain.find_predicate(atom.predicate);
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            const TypedName* obj = domain.find_constant(atom.args[i]);
            if (!obj) obj = p.find_object(atom.args[i]);
            if (!domain.is_subtype(obj->type, pred->parameters[i].type))
                fail(ErrorKind::Type, "type mismatch: '" + obj->name + "' of type '" + obj->type + "' is not a '" +
                                          pred->parameters[i].type + "' in " + atom.str(),
                     at);
        }
    };
    if (init) {
        for (std::size_t i = 1; i < init->items.size(); ++i) {
            const SExpr& item = expect_list(init->items[i], "init atom");
            std::string h = item.head();
            if (h == "=") {
                if (item.items.size() == 3 && is_total_cost(item.items[1]) && parse_cost_value(item.items[2]) == 0) {
                    p.metric_total_cost = true;
                    continue;
                }
                fail(ErrorKind::Unsupported, "unsupported construct: numeric initial value", item);
            }
            if (h == "not") fail(ErrorKind::Syntax, "negative literal in :init", item);
            Atom atom = parse_atom(item, scope);
            check_ground(atom, item);
            if (std::find(p.init.begin(), p.init.end(), atom) == p.init.end()) p.init.push_back(std::move(atom));
        }
    }
    if (goal) {
        if (goal->items.size() > 2) fail(ErrorKind::Syntax, "(:goal ...) takes one formula", *goal);
        if (goal->items.size() == 2) {
            p.goal = parse_condition(goal->items[1], scope);
            dedupe(p.goal);
            const SExpr& at = goal->items[1];
            for (const auto& lit : p.goal) check_ground(lit.atom, at);
        }
    }
    return p;
}

}  // namespace p2p::pddl
