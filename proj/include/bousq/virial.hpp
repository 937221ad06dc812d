#pragma once

#include "bousq/functional_value.hpp"
#include "bousq/nonlinearity.hpp"
#include "bousq/state.hpp"
#include "bousq/weights.hpp"

namespace bousq {

/// Weighted functionals of the flow and their exact analytic time
/// derivatives. Every *_rhs carries a named per-term decomposition so a
/// failed identity check can be localized to one term.

/// J = int psi(x/lambda) u1 u2.
FunctionalValue J_eval(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                       const Grid& grid);

/// dJ/dt: boost, -u2^2, -u1^2, psi''' correction, -3(dx u1)^2, nonlinear.
FunctionalValue J_rhs(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                      const Nonlinearity& nl, const Grid& grid);

/// I+ = int phi dx(u1) u2,  I- = -int dx(phi u1) u2, phi = phi0(x/lambda)/lambda.
FunctionalValue I_plus_eval(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                            const Grid& grid);
FunctionalValue I_minus_eval(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                             const Grid& grid);
FunctionalValue I_plus_rhs(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                           const Nonlinearity& nl, const Grid& grid);
FunctionalValue I_minus_rhs(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                            const Nonlinearity& nl, const Grid& grid);

/// Local energy 1/2 int phi1(x/lambda) ((dx u1)^2 + u1^2 + u2^2 - 2F(u1))
/// and its five-term time derivative.
FunctionalValue E_phi1_eval(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                            const Nonlinearity& nl, const Grid& grid);
FunctionalValue E_phi1_rhs(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                           const Nonlinearity& nl, const Grid& grid);

enum class WeightedNormKind { Phi0Scaled, Phi0Fixed, Phi1Scaled };

/// Weighted H1 x L2 density int w(x) ((dx u1)^2 + u1^2 + u2^2) with
/// w = sech^2(x/lambda(t)), sech^2(x/lambda0), or sech^4(x/lambda(t)).
FunctionalValue weighted_norm(const State& s, WeightedNormKind kind, const ScalingLaw& law,
                              double lambda0, const Grid& grid);

/// Unweighted squared H1 x L2 norm restricted to |x| < radius.
double restricted_norm_sq(const State& s, double radius, const Grid& grid);

/// cosh^4(1): on |x| <= lambda the sech^4(x/lambda) weight is at least
/// 1/cone_factor(), so restricted_norm_sq <= cone_factor() * phi1-weighted norm.
double cone_factor();

/// int sech^2(x/lambda(t)) ((dxx u1)^2 + (dx u2)^2), the smoothing density.
FunctionalValue smoothing_density(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                                  const Grid& grid);

}  // namespace bousq
