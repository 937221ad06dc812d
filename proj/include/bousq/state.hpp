#pragma once

#include "bousq/grid.hpp"

#include <algorithm>
#include <cmath>

namespace bousq {

/// Snapshot (u1, u2) of the first-order system at one time stamp.
struct State {
    RealField u1;
    RealField u2;
    double time = 0.0;
};

inline bool all_finite(const RealField& f) {
    return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
}

inline void require_valid(const State& s, const Grid& g) {
    require_same_length(s.u1, g);
    require_same_length(s.u2, g);
    if (!all_finite(s.u1) || !all_finite(s.u2))
        throw std::runtime_error("state contains non-finite entries");
}

/// max(|u1|, |u2|) over the outer band |x| > 0.9 L (localization contract).
inline double boundary_magnitude(const State& s, const Grid& g) {
    double m = 0.0;
    const double edge = 0.9 * g.half_length;
    for (int j = 0; j < g.n; ++j) {
        if (std::abs(g.nodes[j]) > edge)
            m = std::max({m, std::abs(s.u1[j]), std::abs(s.u2[j])});
    }
    return m;
}

}  // namespace bousq
