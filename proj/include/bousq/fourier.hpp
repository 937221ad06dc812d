#pragma once

#include "bousq/grid.hpp"

namespace bousq {

/// Forward DFT of a real field (FFTW sign convention, unnormalized).
Spectrum to_spectrum(const RealField& f);

/// Inverse DFT, scaled by 1/n; returns the real part.
RealField to_field(const Spectrum& s);

/// Multiply by (ik)^order in place. Odd orders zero the Nyquist mode.
void apply_derivative(Spectrum& s, const Grid& grid, int order);

/// Trigonometric-interpolant derivative of the given order (1..4).
RealField spectral_derivative(const RealField& f, const Grid& grid, int order);

/// Periodic trapezoid rule: spacing * sum of samples.
double integrate(const RealField& f, const Grid& grid);

/// Zero all modes with |k| above rule * k_nyquist. Idempotent.
void dealias_inplace(Spectrum& s, const Grid& grid, double rule);
Spectrum dealias(Spectrum s, const Grid& grid, double rule);

}  // namespace bousq
