#include "bousq/dynamics.hpp"

#include "bousq/fourier.hpp"

#include <cmath>

namespace bousq {

RhsResult rhs(const State& state, const Nonlinearity& nl, const Grid& grid,
              double dealias_rule) {
    require_valid(state, grid);

    Spectrum u2_hat = to_spectrum(state.u2);
    apply_derivative(u2_hat, grid, 1);
    RealField du1 = to_field(u2_hat);

    // dx (u1 - dxx u1 - f(u1)) assembled in spectral space: the linear part
    // carries the symbol ik (1 + k^2); the nonlinear transform is dealiased.
    Spectrum u1_hat = to_spectrum(state.u1);
    Spectrum rhs2(grid.n);
    Spectrum f_hat;
    if (!nl.is_disabled()) f_hat = dealias(to_spectrum(nl.f(state.u1)), grid, dealias_rule);
    const std::complex<double> i_unit(0.0, 1.0);
    for (int j = 0; j < grid.n; ++j) {
        const double k = grid.wavenumbers[j];
        std::complex<double> term = u1_hat[j] * (1.0 + k * k);
        if (!nl.is_disabled()) term -= f_hat[j];
        rhs2[j] = i_unit * k * term;
    }
    rhs2[grid.n / 2] = 0.0;  // odd-derivative Nyquist convention
    RealField du2 = to_field(rhs2);

    if (!all_finite(du1))
        throw std::runtime_error("rhs: non-finite values in dx u2 at t=" +
                                 std::to_string(state.time));
    if (!all_finite(du2))
        throw std::runtime_error("rhs: non-finite values in dx(u1 - dxx u1 - f(u1)) at t=" +
                                 std::to_string(state.time));
    return {std::move(du1), std::move(du2)};
}

double energy(const State& state, const Nonlinearity& nl, const Grid& grid) {
    require_valid(state, grid);
    RealField du1 = spectral_derivative(state.u1, grid, 1);
    RealField quad(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        quad[j] = 0.5 * (state.u2[j] * state.u2[j] + du1[j] * du1[j] + state.u1[j] * state.u1[j]);
        if (!nl.is_disabled()) quad[j] -= nl.F(state.u1[j]);
    }
    return integrate(quad, grid);
}

double energy_norm_sq(const State& state, const Grid& grid) {
    require_valid(state, grid);
    RealField du1 = spectral_derivative(state.u1, grid, 1);
    RealField quad(grid.n);
    for (int j = 0; j < grid.n; ++j)
        quad[j] = du1[j] * du1[j] + state.u1[j] * state.u1[j] + state.u2[j] * state.u2[j];
    return integrate(quad, grid);
}

}  // namespace bousq
