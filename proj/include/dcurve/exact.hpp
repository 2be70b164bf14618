#pragma once

// Exact arithmetic over confusion counts.
//
// A threshold is interpreted as the decimal number the user wrote: its
// shortest round-trip decimal form (0.1 is 1/10, not the nearest binary
// fraction). Every verdict of the form "A > B" where A and B are rational
// functions of counts and t reduces to the sign of an integer linear form,
// evaluated here in 128-bit integers so boundary cases (PPV exactly equal
// to t, two models with exactly equal NB) are classified without rounding.

#include <cstdint>

namespace dcurve::exact {

__extension__ using wide = __int128;

struct Threshold {
    std::int64_t num;   // t = num / den, 0 < num < den
    std::int64_t den;   // power of ten, at most 1e18
};

// Throws DomainError unless 0 < t < 1.
Threshold threshold(double t);

inline int sign(wide v) noexcept { return (v > 0) - (v < 0); }

// Counts are bounded so every linear form used by the library fits in 127 bits.
inline constexpr std::int64_t max_count = std::int64_t{1} << 50;

} // namespace dcurve::exact
