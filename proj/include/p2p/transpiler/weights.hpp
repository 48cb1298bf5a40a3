#pragma once

#include <cstdint>

namespace p2p::transpiler {

// Maps a significance rank r in [1,5] to the penalty scale * base^(r-1).
// Fewer than `base` firings at rank r-1 always cost less than one at r.
struct WeightScheme {
    std::int64_t scale = 10;
    std::int64_t base = 100;

    bool operator==(const WeightScheme&) const = default;
};

// Throws ErrorKind::Range for a rank outside [1,5] or an invalid scheme
// (scale < 1, base < 2, or a weight that overflows int64).
std::int64_t weight(const WeightScheme& scheme, int rank);

void validate_scheme(const WeightScheme& scheme);

}  // namespace p2p::transpiler
