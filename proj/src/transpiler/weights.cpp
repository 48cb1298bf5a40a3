#include "p2p/transpiler/weights.hpp"

#include <limits>
#include <string>

#include "p2p/common/error.hpp"

namespace p2p::transpiler {

namespace {

bool checked_mul(std::int64_t a, std::int64_t b, std::int64_t& out) {
    if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a) return false;
    out = a * b;
    return true;
}

}  // namespace

void validate_scheme(const WeightScheme& scheme) {
    if (scheme.scale < 1) throw Error(ErrorKind::Range, "weight scale must be a positive integer");
    if (scheme.base < 2) throw Error(ErrorKind::Range, "weight base must be at least 2");
    std::int64_t w = scheme.scale;
    for (int r = 2; r <= 5; ++r)
        if (!checked_mul(w, scheme.base, w))
            throw Error(ErrorKind::Range, "weight for rank " + std::to_string(r) + " overflows 64-bit integers");
}

std::int64_t weight(const WeightScheme& scheme, int rank) {
    if (rank < 1 || rank > 5)
        throw Error(ErrorKind::Range, "significance " + std::to_string(rank) + " outside [1,5]");
    validate_scheme(scheme);
    std::int64_t w = scheme.scale;
    for (int r = 1; r < rank; ++r) w *= scheme.base;
    return w;
}

}  // namespace p2p::transpiler
