#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "p2p/ethics/rules.hpp"
#include "p2p/pddl/model.hpp"

namespace fixtures {

std::filesystem::path data_dir();
std::string read_file(const std::filesystem::path& path);

struct TextTask {
    std::string name;
    std::string domain;
    std::string problem;
    std::string rules;  // dialect text
};

// Small ethical tasks (at most eight ground actions each) used where plans
// have to be enumerated exhaustively.
std::vector<TextTask> micro_tasks();

p2p::ethics::EthicalTask load(const TextTask& t);

// Random propositional task over `props` nullary predicates with action
// costs in [1, 5]. Deterministic for a given seed.
TextTask random_strips_task(std::uint32_t seed, int props, int actions);

// Rank-dominance instance: a one-step route firing one rank-3 rule against
// a 99-step route whose steps each fire a rank-2 rule.
TextTask dominance_task();

// The bundled corpus as (domain, problem, rules) files.
std::vector<TextTask> corpus_tasks();

}  // namespace fixtures
