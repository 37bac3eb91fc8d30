#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "pcenter/instance.hpp"

namespace pcenter {

namespace detail {
inline constexpr auto kPowersOfTen = [] {
    std::array<Distance, 18> out{};
    Distance v = 1;
    for (auto& e : out) {
        e = v;
        v *= 10;
    }
    return out;
}();
}  // namespace detail

/// 10^exponent for exponent in [0, 17].
inline Distance pow10(int exponent) { return detail::kPowersOfTen[exponent]; }

/// Precision exponent plus the bounds used for clipping rounded distances.
struct RoundingContext {
    int alpha = 0;
    Distance lb = 0;
    Distance ub = std::numeric_limits<Distance>::max() / 4;

    Distance step() const { return pow10(alpha); }
};

/// Floors `d` to a multiple of 10^alpha and clips the result to [lb, ub + 1].
inline Distance round_distance(Distance d, const RoundingContext& ctx) {
    const Distance step = pow10(ctx.alpha);
    Distance r = (d / step) * step;
    if (r < ctx.lb) r = ctx.lb;
    if (r > ctx.ub + 1) r = ctx.ub + 1;
    return r;
}

/// Number of decimal digits of `ub`, minus one. Requires ub >= 1.
int initial_alpha(Distance ub);

}  // namespace pcenter
