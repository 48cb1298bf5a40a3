#include "p2p/service/api.hpp"

#include <regex>

#include "p2p/common/text.hpp"
#include "p2p/llm/interchange.hpp"
#include "p2p/service/json_codec.hpp"

namespace p2p::service {

namespace {

struct BadRequest : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ApiResponse ok(const json& body, int status = 200) { return {status, body.dump(), {}}; }

ApiResponse error_response(int status, std::string_view kind, const std::string& message,
                           const std::optional<SourceLocation>& loc = std::nullopt,
                           const std::vector<ethics::Finding>* findings = nullptr) {
    json e = {{"kind", kind}, {"message", message}};
    if (loc) {
        e["line"] = loc->line;
        e["column"] = loc->column;
    }
    if (findings) {
        json arr = json::array();
        for (const auto& f : *findings) arr.push_back(to_json(f));
        e["findings"] = arr;
    }
    return {status, json{{"error", e}}.dump(), {}};
}

json parse_body(const std::string& body) {
    if (text::trim(body).empty()) return json::object();
    try {
        auto j = json::parse(body);
        if (!j.is_object()) throw BadRequest("request body must be a JSON object");
        return j;
    } catch (const json::exception& e) {
        throw BadRequest(std::string("malformed JSON body: ") + e.what());
    }
}

int status_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::StageOrder:
        case ErrorKind::Busy: return 409;
        case ErrorKind::ResourceLimit: return 503;
        case ErrorKind::Transport: return 502;
        case ErrorKind::Io: return 500;
        default: return 422;
    }
}

json catalog_json(const Catalog& catalog) {
    json arr = json::array();
    for (const auto& e : catalog.entries())
        arr.push_back({{"id", e.id},
                       {"area", e.area},
                       {"title", e.title},
                       {"domain", e.domain_text},
                       {"problem", e.problem_text},
                       {"principles", e.principles},
                       {"initial_state_notes", e.initial_state_notes},
                       {"assumptions", e.assumptions},
                       {"rule_count_hint", e.rule_count_hint ? json(*e.rule_count_hint) : json(nullptr)}});
    return {{"examples", arr}};
}

std::vector<RuleEdit> parse_edits(const json& body, const ParsedInputs& parsed) {
    if (!body.contains("edits") || !body["edits"].is_array()) throw BadRequest("body needs an 'edits' list");
    std::vector<RuleEdit> edits;
    for (const auto& e : body["edits"]) {
        if (!e.is_object() || !e.contains("op") || !e["op"].is_string()) throw BadRequest("each edit needs an 'op'");
        const auto op = e["op"].get<std::string>();
        auto str = [&](const char* key) {
            if (!e.contains(key) || !e[key].is_string()) throw BadRequest(op + " edit needs string '" + key + "'");
            return e[key].get<std::string>();
        };
        auto rule = [&] {
            if (!e.contains("rule")) throw BadRequest(op + " edit needs a 'rule'");
            return llm::rule_from_json(e["rule"], parsed.domain, &parsed.problem);
        };
        if (op == "add") edits.push_back(AddRule{rule()});
        else if (op == "remove") edits.push_back(RemoveRule{str("rule_id")});
        else if (op == "update") edits.push_back(UpdateRule{rule()});
        else if (op == "set_significance") {
            if (!e.contains("rank") || !e["rank"].is_number_integer()) throw BadRequest("set_significance needs integer 'rank'");
            edits.push_back(SetSignificance{str("rule_id"), str("feature"), e["rank"].get<int>()});
        } else {
            throw BadRequest("unknown edit op '" + op + "'");
        }
    }
    return edits;
}

}  // namespace

ApiResponse Api::handle(const ApiRequest& req) {
    static const std::regex kSession(R"(^/api/v1/sessions/([^/]+)(/(advance|rules|code|comparison))?/?$)");
    const std::string& m = req.method;
    try {
        if (req.path == "/api/v1/healthz" && m == "GET") return ok({{"status", "ok"}});
        if (req.path == "/api/v1/examples" && m == "GET") return ok(catalog_json(manager_.catalog()));
        if ((req.path == "/api/v1/sessions" || req.path == "/api/v1/sessions/") && m == "POST") {
            const auto body = parse_body(req.body);
            if (body.contains("example_id")) {
                if (!body["example_id"].is_string()) throw BadRequest("'example_id' must be a string");
                return ok(to_json(manager_.create_from_example(body["example_id"].get<std::string>(),
                                                               body.value("model", ""))),
                          201);
            }
            return ok(to_json(manager_.create(inputs_from_json(body))), 201);
        }

        std::smatch match;
        if (std::regex_match(req.path, match, kSession)) {
            const std::string id = match[1];
            const std::string sub = match[3];
            if (sub.empty() && m == "GET") return ok(to_json(manager_.get(id)));
            if (sub == "advance" && m == "POST") {
                const auto body = parse_body(req.body);
                if (!body.contains("target") || !body["target"].is_string())
                    throw BadRequest("body needs a string 'target' stage");
                auto stage = parse_stage(body["target"].get<std::string>());
                if (!stage) throw BadRequest("unknown stage '" + body["target"].get<std::string>() + "'");
                return ok(to_json(manager_.advance(id, *stage)));
            }
            if (sub == "rules" && m == "PATCH") {
                const auto body = parse_body(req.body);
                const auto parsed = manager_.parsed_inputs(id);
                return ok(to_json(manager_.edit_rules(id, parse_edits(body, parsed))));
            }
            if (sub == "code" && m == "PUT") {
                const auto body = parse_body(req.body);
                if (!body.contains("code") || !body["code"].is_string()) throw BadRequest("body needs a string 'code'");
                return ok(to_json(manager_.replace_code(id, body["code"].get<std::string>())));
            }
            if (sub == "comparison" && m == "GET") return ok(to_json(manager_.comparison(id)));
        }
        return error_response(404, "not-found", "no route for " + m + " " + req.path);
    } catch (const BadRequest& e) {
        return error_response(400, "bad-request", e.what());
    } catch (const SessionNotFound& e) {
        return error_response(404, "not-found", e.message());
    } catch (const ComparisonNotAvailable& e) {
        return error_response(409, "not-available", e.message());
    } catch (const SessionBusy& e) {
        auto r = error_response(409, "busy", e.message());
        r.headers["Retry-After"] = "1";
        return r;
    } catch (const StageFailure& e) {
        return error_response(status_for(e.kind()), to_string(e.kind()), e.message(), e.location(), &e.findings());
    } catch (const Error& e) {
        return error_response(status_for(e.kind()), to_string(e.kind()), e.message(), e.location());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

}  // namespace p2p::service
