#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace p2p::pddl {

using PropId = std::uint32_t;

// Fixed-width bitset over a proposition universe.
class State {
public:
    State() = default;
    explicit State(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    bool test(PropId p) const { return (words_[p >> 6] >> (p & 63)) & 1U; }
    void set(PropId p) { words_[p >> 6] |= (std::uint64_t{1} << (p & 63)); }
    void reset(PropId p) { words_[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }
    std::size_t count() const;
    std::vector<PropId> members() const;

    bool operator==(const State&) const = default;
    std::size_t hash() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct StateHash {
    std::size_t operator()(const State& s) const { return s.hash(); }
};

}  // namespace p2p::pddl
