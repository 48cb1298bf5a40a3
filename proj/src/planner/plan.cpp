#include "p2p/planner/plan.hpp"

#include <charconv>
#include <regex>
#include <sstream>

#include "p2p/common/error.hpp"
#include "p2p/common/text.hpp"

namespace p2p::planner {

std::string_view to_string(Provenance p) { return p == Provenance::Internal ? "internal" : "external"; }

std::string_view to_string(SearchMode m) {
    switch (m) {
    case SearchMode::Optimal: return "optimal";
    case SearchMode::Astar: return "astar";
    case SearchMode::Greedy: return "greedy";
    }
    return "optimal";
}

std::optional<SearchMode> parse_search_mode(std::string_view s) {
    if (text::iequals(s, "optimal") || text::iequals(s, "ucs")) return SearchMode::Optimal;
    if (text::iequals(s, "astar")) return SearchMode::Astar;
    if (text::iequals(s, "greedy") || text::iequals(s, "gbfs")) return SearchMode::Greedy;
    return std::nullopt;
}

Plan parse_external_plan(std::string_view source) {
    static const std::regex kCostLine(R"(^;\s*cost\s*=\s*(\d+)\b.*$)", std::regex::icase);
    Plan plan;
    plan.provenance = Provenance::External;
    std::istringstream in{std::string(source)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = text::trim(raw);
        if (line.empty()) continue;
        if (line.front() == ';') {
            std::smatch m;
            if (std::regex_match(line, m, kCostLine)) {
                std::int64_t cost = 0;
                const std::string digits = m[1].str();
                auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cost);
                if (ec != std::errc()) throw Error(ErrorKind::Syntax, "cost out of range", SourceLocation{line_no, 1});
                plan.total_cost = cost;
            }
            continue;
        }
        if (line.front() != '(' || line.back() != ')')
            throw Error(ErrorKind::Syntax, "expected '(<action> <arg>*)', got '" + line + "'", SourceLocation{line_no, 1});
        std::istringstream words(line.substr(1, line.size() - 2));
        pddl::PlanStep step;
        std::string w;
        while (words >> w) {
            if (w.find_first_of("()") != std::string::npos)
                throw Error(ErrorKind::Syntax, "nested parentheses in plan step", SourceLocation{line_no, 1});
            if (step.action.empty()) step.action = w;
            else step.args.push_back(w);
        }
        if (step.action.empty()) throw Error(ErrorKind::Syntax, "empty plan step", SourceLocation{line_no, 1});
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

std::string format_plan(const Plan& plan) {
    std::ostringstream os;
    for (const auto& s : plan.steps) os << s.str() << '\n';
    if (plan.total_cost) os << "; cost = " << *plan.total_cost << " (general cost)\n";
    return os.str();
}

}  // namespace p2p::planner
