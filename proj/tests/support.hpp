#pragma once

#include "bousq/fourier.hpp"
#include "bousq/grid.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace bousq::test {

inline double uniform_pm1(std::mt19937_64& gen) {
    return 2.0 * ((gen() >> 11) * 0x1.0p-53) - 1.0;
}

/// Band-limited smooth field with spectral envelope exp(-(k/2)^2),
/// normalized to unit discrete L2 norm. Zero Nyquist by construction.
inline RealField random_smooth_field(const Grid& g, std::mt19937_64& gen,
                                     double k_band = 8.0) {
    Spectrum s(g.n, 0.0);
    const double dk = M_PI / g.half_length;
    const int j_max = std::min<int>(g.n / 2 - 1, static_cast<int>(k_band / dk));
    s[0] = uniform_pm1(gen);
    for (int j = 1; j <= j_max; ++j) {
        const double k = j * dk;
        const double env = std::exp(-0.25 * k * k);
        const std::complex<double> c(uniform_pm1(gen) * env, uniform_pm1(gen) * env);
        s[j] = c;
        s[g.n - j] = std::conj(c);
    }
    RealField f = to_field(s);
    double norm2 = 0.0;
    for (double v : f) norm2 += v * v * g.spacing;
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& v : f) v *= scale;
    return f;
}

/// Independent fine-grid Simpson quadrature of an analytic integrand
/// (oracle path, no spectral machinery).
inline double quad_oracle(const std::function<double(double)>& f, double a, double b,
                          int intervals = 400000) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

/// Fourth-order centered difference (5-point stencil).
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double max_abs(const RealField& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs_diff(const RealField& a, const RealField& b) {
    double m = 0.0;
    for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace bousq::test
