#pragma once

#include "bousq/nonlinearity.hpp"
#include "bousq/state.hpp"

namespace bousq {

inline constexpr double kDefaultDealiasRule = 2.0 / 3.0;

struct RhsResult {
    RealField du1;
    RealField du2;
};

/// Right-hand side of the first-order system
///   d/dt u1 = dx u2
///   d/dt u2 = dx (u1 - dxx u1 - f(u1)),
/// with the nonlinear product dealiased before the outer derivative.
RhsResult rhs(const State& state, const Nonlinearity& nl, const Grid& grid,
              double dealias_rule = kDefaultDealiasRule);

/// Conserved energy E = 1/2 int (u2^2 + (dx u1)^2 + u1^2) - int F(u1).
double energy(const State& state, const Nonlinearity& nl, const Grid& grid);

/// Squared energy-space norm int ((dx u1)^2 + u1^2 + u2^2).
double energy_norm_sq(const State& state, const Grid& grid);

}  // namespace bousq
