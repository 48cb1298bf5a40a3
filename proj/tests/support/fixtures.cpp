#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "p2p/ethics/dialect.hpp"
#include "p2p/pddl/parser.hpp"

namespace fixtures {

std::filesystem::path data_dir() { return P2P_TEST_DATA_DIR; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

p2p::ethics::EthicalTask load(const TextTask& t) {
    auto d = p2p::pddl::parse_domain(t.domain);
    auto p = p2p::pddl::parse_problem(t.problem, d);
    auto r = p2p::ethics::parse_ethical(t.rules, d, &p);
    return p2p::ethics::make_ethical_task(std::move(d), std::move(p), std::move(r));
}

std::vector<TextTask> micro_tasks() {
    std::vector<TextTask> out;
    out.push_back({"road",
                   R"((define (domain road)
  (:requirements :strips :typing :negative-preconditions)
  (:types loc road)
  (:predicates (at ?l - loc) (link ?r - road ?a - loc ?b - loc) (open ?r - road) (urgent) (told))
  (:action drive :parameters (?r - road ?a - loc ?b - loc)
    :precondition (and (at ?a) (link ?r ?a ?b) (open ?r))
    :effect (and (at ?b) (not (at ?a))))
  (:action cut :parameters (?r - road ?a - loc ?b - loc)
    :precondition (and (at ?a) (link ?r ?a ?b) (not (open ?r)))
    :effect (and (at ?b) (not (at ?a))))
  (:action tell :parameters ()
    :precondition (not (told))
    :effect (told)))
)",
                   R"((define (problem road-1) (:domain road)
  (:objects a b c - loc r1 r2 r3 r4 - road)
  (:init (at a) (link r1 a b) (link r2 b c) (link r3 a c) (link r4 b a) (open r1) (open r2) (open r4))
  (:goal (at c)))
)",
                   R"((:ethical-rules
  (rule r-cut :action cut :condition (and (not (urgent)))
    :features ((law negative 2) (risk negative 1)))
  (rule r-slow :action drive :condition (and (urgent))
    :features ((delay negative 1)))
  (rule r-tell :action tell :features ((honesty positive 1))))
)"});
    out.push_back({"care",
                   R"((define (domain care)
  (:requirements :strips :typing :negative-preconditions)
  (:types room person)
  (:predicates (robot-at ?r - room) (adj ?a - room ?b - room) (private ?r - room) (knocked ?r - room)
               (in ?p - person ?r - room) (asleep ?p - person) (served ?p - person))
  (:action move :parameters (?a - room ?b - room)
    :precondition (and (robot-at ?a) (adj ?a ?b))
    :effect (and (robot-at ?b) (not (robot-at ?a))))
  (:action knock :parameters (?a - room ?b - room)
    :precondition (and (robot-at ?a) (adj ?a ?b) (not (knocked ?b)))
    :effect (knocked ?b))
  (:action wake :parameters (?p - person ?r - room)
    :precondition (and (robot-at ?r) (in ?p ?r) (asleep ?p))
    :effect (not (asleep ?p)))
  (:action serve :parameters (?p - person ?r - room)
    :precondition (and (robot-at ?r) (in ?p ?r) (not (asleep ?p)))
    :effect (served ?p)))
)",
                   R"((define (problem care-1) (:domain care)
  (:objects hall bed - room ann - person)
  (:init (robot-at hall) (adj hall bed) (adj bed hall) (private bed) (in ann bed) (asleep ann))
  (:goal (served ann)))
)",
                   R"((:ethical-rules
  (rule r-intrude :action move :condition (and (private ?b) (not (knocked ?b)))
    :features ((privacy negative 3)))
  (rule r-wake :action wake :features ((rest negative 1)))
  (rule r-visit :action move :condition (and (private ?b))
    :features ((company positive 1))))
)"});
    out.push_back({"toggle",
                   R"((define (domain toggle)
  (:requirements :strips :typing :negative-preconditions :action-costs)
  (:types item)
  (:predicates (p ?i - item) (q) (done ?i - item))
  (:functions (total-cost) - number)
  (:action flip :parameters (?i - item)
    :precondition (not (done ?i))
    :effect (and (done ?i) (increase (total-cost) 2)))
  (:action set-q :parameters ()
    :precondition (not (q))
    :effect (and (q) (increase (total-cost) 1)))
  (:action clear-q :parameters ()
    :precondition (q)
    :effect (and (not (q)) (increase (total-cost) 1))))
)",
                   R"((define (problem toggle-1) (:domain toggle)
  (:objects x y - item)
  (:init (p x) (= (total-cost) 0))
  (:goal (and (done x) (done y)))
  (:metric minimize (total-cost)))
)",
                   R"((:ethical-rules
  (rule r-p :action flip :condition (and (p ?i)) :features ((harm negative 2)))
  (rule r-nq :action flip :condition (and (not (q))) :features ((noise negative 1) (care positive 1)))
  (rule r-pq :action flip :condition (and (p ?i) (q)) :features ((grace positive 1)))
  (rule r-set :action set-q :features ((effort negative 1))))
)"});
    return out;
}

TextTask random_strips_task(std::uint32_t seed, int props, int actions) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> cost(1, 5);
    std::ostringstream d, p;
    d << "(define (domain rnd" << seed << ") (:requirements :strips :negative-preconditions :action-costs)\n"
      << "  (:predicates";
    for (int i = 0; i < props; ++i) d << " (p" << i << ")";
    d << ")\n  (:functions (total-cost) - number)\n";
    for (int a = 0; a < actions; ++a) {
        std::ostringstream pre, eff;
        for (int i = 0; i < props; ++i) {
            const double x = u(rng);
            if (x < 0.2) pre << " (p" << i << ")";
            else if (x < 0.3) pre << " (not (p" << i << "))";
            const double y = u(rng);
            if (y < 0.25) eff << " (p" << i << ")";
            else if (y < 0.4) eff << " (not (p" << i << "))";
        }
        d << "  (:action a" << a << " :parameters () :precondition (and" << pre.str() << ")\n"
          << "    :effect (and" << eff.str() << " (increase (total-cost) " << cost(rng) << ")))\n";
    }
    d << ")\n";
    p << "(define (problem rnd" << seed << "-p) (:domain rnd" << seed << ") (:init (= (total-cost) 0)";
    for (int i = 0; i < props; ++i)
        if (u(rng) < 0.3) p << " (p" << i << ")";
    p << ")\n  (:goal (and";
    std::uniform_int_distribution<int> pick(0, props - 1);
    const int goals = 1 + static_cast<int>(u(rng) * 3);
    for (int g = 0; g < goals; ++g) {
        const bool positive = u(rng) < 0.8;
        p << (positive ? " (p" : " (not (p") << pick(rng) << (positive ? ")" : "))");
    }
    p << "))\n  (:metric minimize (total-cost)))\n";
    return {"random-" + std::to_string(seed), d.str(), p.str(), "(:ethical-rules)"};
}

TextTask dominance_task() {
    std::ostringstream p;
    p << "(define (problem dominance) (:domain corridor) (:objects";
    for (int i = 0; i <= 99; ++i) p << " n" << i;
    p << " - node) (:init (at n0) (express n0 n99)";
    for (int i = 0; i < 99; ++i) p << " (next n" << i << " n" << i + 1 << ")";
    p << ") (:goal (at n99)))\n";
    return {"dominance",
            R"((define (domain corridor)
  (:requirements :strips :typing)
  (:types node)
  (:predicates (at ?n - node) (next ?a - node ?b - node) (express ?a - node ?b - node))
  (:action step :parameters (?a - node ?b - node)
    :precondition (and (at ?a) (next ?a ?b))
    :effect (and (at ?b) (not (at ?a))))
  (:action jump :parameters (?a - node ?b - node)
    :precondition (and (at ?a) (express ?a ?b))
    :effect (and (at ?b) (not (at ?a)))))
)",
            p.str(),
            R"((:ethical-rules
  (rule toll :action step :features ((nuisance negative 2)))
  (rule breach :action jump :features ((danger negative 3))))
)"};
}

std::vector<TextTask> corpus_tasks() {
    std::vector<TextTask> out;
    const auto root = data_dir() / "examples";
    for (const char* area : {"autonomous-vehicles", "elderly-care", "firefighting-rescue"}) {
        const auto dir = root / area;
        const auto domain = read_file(dir / "domain.pddl");
        const auto rules = read_file(dir / "rules.pddl");
        std::vector<std::filesystem::path> problems;
        for (const auto& e : std::filesystem::directory_iterator(dir))
            if (e.path().filename().string().rfind("problem-", 0) == 0) problems.push_back(e.path());
        std::sort(problems.begin(), problems.end());
        for (const auto& pp : problems)
            out.push_back({std::string(area) + "/" + pp.stem().string(), domain, read_file(pp), rules});
    }
    return out;
}

}  // namespace fixtures
