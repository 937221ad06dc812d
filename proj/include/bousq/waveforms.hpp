#pragma once

#include "bousq/state.hpp"

#include <cstdint>
#include <string>

namespace bousq {

/// Solitary-wave parameters. The boost factor gamma = sqrt(1 - v^2) is not
/// the Lorentz one; the system has its own scaling of amplitude and width.
struct SolitonParams {
    double p = 2.0;   // nonlinearity exponent, > 1
    double v = 0.0;   // speed, |v| < 1
    double x0 = 0.0;  // center

    double gamma() const;
    void validate() const;
};

/// Ground-state profile Q(s) = ((p+1) / (2 cosh^2((p-1)s/2)))^{1/(p-1)},
/// the positive even solution of Q'' - Q + Q^p = 0.
double q_profile(double p, double s);

/// t=0 snapshot of the traveling wave: u1 = gamma^{2/(p-1)} Q(gamma (x - x0)),
/// u2 = -v u1. Rejects profiles that violate the localization contract.
State boosted_soliton(const SolitonParams& params, const Grid& grid,
                      double boundary_threshold = 1e-10);

enum class SmallDataKind { SechPacket, Gaussian, FilteredRandom };

SmallDataKind small_data_kind_from_string(const std::string& s);
std::string to_string(SmallDataKind k);

/// Localized data normalized so the discrete H1 x L2 norm equals `amplitude`.
/// filtered_random is band-limited with spectral envelope exp(-k^2), a
/// Gaussian spatial window, and fully seed-deterministic phases.
State small_data(SmallDataKind kind, double amplitude, std::uint64_t seed, const Grid& grid,
                 double boundary_threshold = 1e-10);

}  // namespace bousq
