#include "p2p/planner/external.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <sys/wait.h>
#include <unistd.h>

#include "p2p/common/error.hpp"
#include "p2p/pddl/printer.hpp"
#include "p2p/planner/validate.hpp"

namespace p2p::planner {

namespace fs = std::filesystem;

namespace {

class ScratchDir {
public:
    ScratchDir() {
        std::random_device rd;
        std::uniform_int_distribution<unsigned long long> dist;
        path_ = fs::temp_directory_path() / ("p2p-planner-" + std::to_string(dist(rd)));
        fs::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorKind::Io, "cannot write " + p.string());
}

std::string expand(std::string arg, const std::string& key, const std::string& value) {
    for (auto pos = arg.find(key); pos != std::string::npos; pos = arg.find(key, pos + value.size()))
        arg.replace(pos, key.size(), value);
    return arg;
}

struct ExitInfo {
    bool timed_out = false;
    bool signalled = false;
    int code = -1;
};

ExitInfo run_process(const std::vector<std::string>& argv, const fs::path& workdir, std::chrono::milliseconds timeout) {
    pid_t pid = fork();
    if (pid < 0) throw Error(ErrorKind::Io, "fork failed");
    if (pid == 0) {
        std::vector<char*> args;
        for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);
        if (chdir(workdir.c_str()) != 0) _exit(127);
        // Planner chatter is not part of the contract.
        FILE* devnull = std::fopen("/dev/null", "w");
        if (devnull) {
            dup2(fileno(devnull), STDOUT_FILENO);
            dup2(fileno(devnull), STDERR_FILENO);
        }
        execvp(args[0], args.data());
        _exit(127);
    }
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    int status = 0;
    while (true) {
        pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) break;
        if (r < 0) throw Error(ErrorKind::Io, "waitpid failed");
        if (std::chrono::steady_clock::now() > deadline) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            return {true, false, -1};
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    if (WIFSIGNALED(status)) return {false, true, -1};
    return {false, false, WEXITSTATUS(status)};
}

}  // namespace

SolveResult solve_external(const pddl::PlanningDomain& domain, const pddl::PlanningProblem& problem,
                           const pddl::GroundTask& task, const ExternalPlannerConfig& config) {
    if (config.executable.empty()) throw Error(ErrorKind::Io, "no external planner executable configured");
    const auto start = std::chrono::steady_clock::now();
    ScratchDir dir;
    const fs::path domain_path = dir.path() / "domain.pddl";
    const fs::path problem_path = dir.path() / "problem.pddl";
    const fs::path plan_path = dir.path() / "plan.txt";
    write_file(domain_path, pddl::serialize_domain(domain));
    write_file(problem_path, pddl::serialize_problem(problem));

    std::vector<std::string> argv{config.executable};
    for (const auto& a : config.arguments) {
        std::string x = expand(a, "{domain}", domain_path.string());
        x = expand(x, "{problem}", problem_path.string());
        argv.push_back(expand(x, "{plan}", plan_path.string()));
    }

    SolveResult result;
    auto done = [&](SolveStatus s, std::string msg) {
        result.status = s;
        result.message = std::move(msg);
        result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    };
    ExitInfo exit = run_process(argv, dir.path(), config.timeout);
    if (exit.timed_out) return done(SolveStatus::ResourceLimit, "external planner exceeded its timeout");
    if (exit.signalled) return done(SolveStatus::Failed, "external planner terminated by a signal");
    auto in = [](const std::vector<int>& v, int c) { return std::find(v.begin(), v.end(), c) != v.end(); };
    if (exit.code != 0 || !fs::exists(plan_path)) {
        if (in(config.unsolvable_exit_codes, exit.code)) return done(SolveStatus::Unsolvable, "external planner reported unsolvable");
        if (in(config.resource_exit_codes, exit.code)) return done(SolveStatus::ResourceLimit, "external planner ran out of resources");
        return done(SolveStatus::Failed, "external planner exited with status " + std::to_string(exit.code) +
                                             (fs::exists(plan_path) ? "" : " and wrote no plan"));
    }
    std::ifstream plan_in(plan_path, std::ios::binary);
    std::stringstream buffer;
    buffer << plan_in.rdbuf();
    Plan plan = parse_external_plan(buffer.str());
    auto report = validate_plan(task, plan);
    if (!report.valid) {
        std::string why = report.findings.empty() ? "invalid plan" : report.findings.front().message;
        return done(SolveStatus::Failed, "external plan rejected: " + why);
    }
    plan.total_cost = report.recomputed_cost;
    plan.provenance = Provenance::External;
    plan.optimal = false;
    result.plan = std::move(plan);
    return done(SolveStatus::Solved, {});
}

}  // namespace p2p::planner
