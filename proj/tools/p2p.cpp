// p2p: command-line front end for parsing, grounding, compiling and solving
// tasks, and for running the HTTP service.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "p2p/ethics/dialect.hpp"
#include "p2p/ethics/validate.hpp"
#include "p2p/pddl/grounding.hpp"
#include "p2p/pddl/parser.hpp"
#include "p2p/pddl/printer.hpp"
#include "p2p/planner/search.hpp"
#include "p2p/planner/validate.hpp"
#include "p2p/service/http_server.hpp"
#include "p2p/service/json_codec.hpp"
#include "p2p/transpiler/compile.hpp"

namespace fs = std::filesystem;
using namespace p2p;

namespace {

// Exit statuses follow the convention of common classical planners so the
// tool can stand in for one behind the external-planner adapter.
constexpr int kExitUnsolvable = 11;
constexpr int kExitResource = 23;
constexpr int kExitInput = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << text;
}

struct TaskFiles {
    std::string domain;
    std::string problem;
};

std::pair<pddl::PlanningDomain, pddl::PlanningProblem> load_task(const TaskFiles& f) {
    auto domain = pddl::parse_domain(slurp(f.domain));
    std::vector<pddl::Diagnostic> warnings;
    auto problem = pddl::parse_problem(slurp(f.problem), domain, &warnings);
    for (const auto& w : warnings)
        std::cerr << f.problem << ":" << w.location.line << ":" << w.location.column << ": warning: " << w.message
                  << "\n";
    return {std::move(domain), std::move(problem)};
}

service::ServiceConfig load_config(const std::string& path) {
    auto config = path.empty() ? service::ServiceConfig{} : service::load_config_file(path);
    service::apply_env_overrides(config);
    return config;
}

service::HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ethically-informed classical planning toolkit"};
    app.require_subcommand(1);

    TaskFiles files;
    std::string rules_path, plan_path, out_dir, mode = "astar", config_path, data_dir, example_id;
    std::int64_t scale = 10, base = 100;
    std::uint64_t node_cap = 5'000'000;
    double time_cap = 60.0;
    bool serial = false, no_prune = false, list = false;

    auto* check = app.add_subcommand("check", "Parse a task and optional rules; report problems");
    check->add_option("domain", files.domain)->required()->check(CLI::ExistingFile);
    check->add_option("problem", files.problem)->required()->check(CLI::ExistingFile);
    check->add_option("--rules", rules_path)->check(CLI::ExistingFile);

    auto* ground = app.add_subcommand("ground", "Ground a task and print its size");
    ground->add_option("domain", files.domain)->required()->check(CLI::ExistingFile);
    ground->add_option("problem", files.problem)->required()->check(CLI::ExistingFile);
    ground->add_flag("--serial", serial, "Use the single-threaded reference grounder");
    ground->add_flag("--no-prune", no_prune, "Keep static preconditions");
    ground->add_flag("--list", list, "Print every ground action");

    auto* compile = app.add_subcommand("compile", "Compile rules into a cost-annotated task");
    compile->add_option("domain", files.domain)->required()->check(CLI::ExistingFile);
    compile->add_option("problem", files.problem)->required()->check(CLI::ExistingFile);
    compile->add_option("rules", rules_path)->required()->check(CLI::ExistingFile);
    compile->add_option("-o,--out", out_dir, "Directory for domain.pddl and problem.pddl")->required();
    compile->add_option("--scale", scale, "Weight scale S");
    compile->add_option("--base", base, "Weight base B");

    auto* solve = app.add_subcommand("solve", "Solve a task; writes a plan file");
    solve->add_option("domain", files.domain)->required()->check(CLI::ExistingFile);
    solve->add_option("problem", files.problem)->required()->check(CLI::ExistingFile);
    solve->add_option("plan", plan_path, "Plan output path (default: stdout)");
    solve->add_option("--mode", mode, "optimal | astar | greedy");
    solve->add_option("--node-cap", node_cap);
    solve->add_option("--time-cap", time_cap);

    auto* validate = app.add_subcommand("validate", "Check a plan file against a task");
    validate->add_option("domain", files.domain)->required()->check(CLI::ExistingFile);
    validate->add_option("problem", files.problem)->required()->check(CLI::ExistingFile);
    validate->add_option("plan", plan_path)->required()->check(CLI::ExistingFile);

    auto* examples = app.add_subcommand("examples", "List bundled examples");
    examples->add_option("--data-dir", data_dir);

    auto* run = app.add_subcommand("run-example", "Run a bundled example end to end with the mock provider");
    run->add_option("id", example_id)->required();
    run->add_option("--data-dir", data_dir);
    run->add_option("--config", config_path)->check(CLI::ExistingFile);

    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--config", config_path)->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) {
            auto [domain, problem] = load_task(files);
            std::cout << "domain " << domain.name << ": " << domain.actions.size() << " action(s), "
                      << domain.predicates.size() << " predicate(s)\n";
            std::cout << "problem " << problem.name << ": " << problem.objects.size() << " object(s), "
                      << problem.init.size() << " init atom(s)\n";
            if (!rules_path.empty()) {
                auto rules = ethics::parse_ethical(slurp(rules_path), domain, &problem);
                auto report = ethics::validate_rules(rules, domain, &problem);
                std::cout << rules.size() << " rule(s), " << report.error_count() << " error(s), "
                          << report.warning_count() << " warning(s)\n";
                for (const auto& f : report.findings) std::cout << "  " << f.str() << "\n";
                return report.has_errors() ? 1 : 0;
            }
            return 0;
        }

        if (*ground) {
            auto [domain, problem] = load_task(files);
            pddl::GroundingOptions opts;
            opts.prune_static_preconditions = !no_prune;
            auto task = serial ? pddl::reference::ground_task_serial(domain, problem, opts)
                               : pddl::ground_task(domain, problem, opts);
            std::cout << task.propositions.size() << " proposition(s), " << task.actions.size()
                      << " ground action(s)\n";
            if (list)
                for (const auto& a : task.actions) std::cout << "(" << a.label() << ") cost " << a.cost << "\n";
            return 0;
        }

        if (*compile) {
            auto [domain, problem] = load_task(files);
            auto rules = ethics::parse_ethical(slurp(rules_path), domain, &problem);
            auto task = ethics::make_ethical_task(domain, problem, std::move(rules));
            auto compiled = transpiler::compile(task, {scale, base});
            fs::create_directories(out_dir);
            write_file(fs::path(out_dir) / "domain.pddl", pddl::serialize_domain(compiled.domain));
            write_file(fs::path(out_dir) / "problem.pddl", pddl::serialize_problem(compiled.problem));
            std::cout << compiled.domain.actions.size() << " compiled action(s) written to " << out_dir << "\n";
            return 0;
        }

        if (*solve) {
            auto [domain, problem] = load_task(files);
            auto parsed_mode = planner::parse_search_mode(mode);
            if (!parsed_mode) throw Error(ErrorKind::Validation, "unknown mode '" + mode + "'");
            auto task = pddl::ground_task(domain, problem);
            auto result = planner::solve(task, {*parsed_mode, node_cap, time_cap});
            std::cerr << planner::to_string(result.status) << ": expanded " << result.stats.expanded << " in "
                      << result.stats.seconds << "s\n";
            if (result.status == planner::SolveStatus::Unsolvable) return kExitUnsolvable;
            if (result.status != planner::SolveStatus::Solved) {
                std::cerr << result.message << "\n";
                return kExitResource;
            }
            const auto text = planner::format_plan(*result.plan);
            if (plan_path.empty()) std::cout << text;
            else write_file(plan_path, text);
            return 0;
        }

        if (*validate) {
            auto [domain, problem] = load_task(files);
            auto task = pddl::ground_task(domain, problem);
            auto plan = planner::parse_external_plan(slurp(plan_path));
            auto v = planner::validate_plan(task, plan);
            for (const auto& f : v.findings)
                std::cout << (f.step ? "step " + std::to_string(*f.step) + ": " : "") << f.message << "\n";
            std::cout << (v.valid ? "valid" : "invalid") << ", cost " << v.recomputed_cost << "\n";
            return v.valid ? 0 : 1;
        }

        if (*examples) {
            auto catalog = service::Catalog::load(data_dir.empty() ? fs::path(P2P_DEFAULT_DATA_DIR) : fs::path(data_dir));
            for (const auto& e : catalog.entries()) std::cout << e.id << "\t" << e.area << "\t" << e.title << "\n";
            return 0;
        }

        if (*run) {
            auto config = load_config(config_path);
            if (!data_dir.empty()) config.data_dir = data_dir;
            config.provider = "mock";
            const auto scratch = fs::temp_directory_path() / ("p2p-run-" + service::new_session_id());
            config.storage_dir = scratch;
            auto manager = service::make_manager(config);
            auto s = manager->create_from_example(example_id);
            for (auto st : {service::Stage::RulesGenerated, service::Stage::RulesFinalized,
                            service::Stage::CodeGenerated, service::Stage::CodeFinalized, service::Stage::Planned})
                s = manager->advance(s.id, st);
            std::cout << service::to_json(*s.comparison).dump(2) << "\n";
            fs::remove_all(scratch);
            return 0;
        }

        if (*serve) {
            auto config = load_config(config_path);
            auto manager = service::make_manager(config);
            service::Api api(*manager);
            service::HttpServer server(api);
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on " << config.host << ":" << config.port << "\n";
            if (!server.listen(config.host, config.port)) {
                std::cerr << "cannot listen on " << config.host << ":" << config.port << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const service::StageFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& f : e.findings()) std::cerr << "  " << f.str() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::ResourceLimit ? kExitResource : kExitInput;
    }
    return 0;
}
