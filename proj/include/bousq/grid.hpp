#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace bousq {

/// Real samples at the grid nodes.
using RealField = std::vector<double>;

/// Complex Fourier coefficients in FFT layout (mode j = 0..n-1).
using Spectrum = std::vector<std::complex<double>>;

/// Uniform periodic grid on [-L, L) standing in for the real line.
///
/// Node j sits at x_j = -L + j*spacing and mode j carries wavenumber
/// k_j = pi*j/L with j taken in the symmetric index set
/// {0, 1, ..., n/2, -n/2+1, ..., -1} (FFT order).
struct Grid {
    int n = 0;
    double half_length = 0.0;
    double spacing = 0.0;
    std::vector<double> nodes;
    std::vector<double> wavenumbers;

    static Grid make(int n_points, double half_length);

    double nyquist() const { return wavenumbers[n / 2]; }
};

inline Grid Grid::make(int n_points, double half_length) {
    if (n_points <= 0 || n_points % 2 != 0)
        throw std::invalid_argument("grid.n: must be a positive even integer");
    if (!(half_length > 0.0))
        throw std::invalid_argument("grid.half_length: must be positive");

    Grid g;
    g.n = n_points;
    g.half_length = half_length;
    g.spacing = 2.0 * half_length / n_points;
    g.nodes.resize(n_points);
    g.wavenumbers.resize(n_points);
    const double dk = M_PI / half_length;
    for (int j = 0; j < n_points; ++j) {
        g.nodes[j] = -half_length + j * g.spacing;
        const int m = (j <= n_points / 2) ? j : j - n_points;
        g.wavenumbers[j] = dk * m;
    }
    return g;
}

inline void require_same_length(const RealField& f, const Grid& g) {
    if (static_cast<int>(f.size()) != g.n)
        throw std::invalid_argument("field length does not match grid n_points");
}

}  // namespace bousq
