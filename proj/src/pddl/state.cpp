#include "p2p/pddl/state.hpp"

#include <bit>

namespace p2p::pddl {

std::size_t State::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::vector<PropId> State::members() const {
    std::vector<PropId> out;
    for (PropId p = 0; p < size_; ++p)
        if (test(p)) out.push_back(p);
    return out;
}

std::size_t State::hash() const {
    // FNV-1a over the words.
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words_) {
        h ^= w;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

}  // namespace p2p::pddl
