#include "bousq/waveforms.hpp"

#include "bousq/dynamics.hpp"
#include "bousq/fourier.hpp"

#include <cmath>
#include <random>

namespace bousq {

double SolitonParams::gamma() const { return std::sqrt(1.0 - v * v); }

void SolitonParams::validate() const {
    if (!(p > 1.0)) throw std::invalid_argument("soliton.p: must exceed 1");
    if (!(std::abs(v) < 1.0)) throw std::invalid_argument("soliton.v: |v| < 1 required");
    if (!std::isfinite(x0)) throw std::invalid_argument("soliton.x0: must be finite");
}

namespace {

// Overflow-safe sech.
double sech(double z) {
    const double a = std::abs(z);
    const double e = std::exp(-a);
    return 2.0 * e / (1.0 + e * e);
}

}  // namespace

double q_profile(double p, double s) {
    if (!(p > 1.0)) throw std::invalid_argument("q_profile: p must exceed 1");
    const double z = 0.5 * (p - 1.0) * s;
    const double amp = std::pow(0.5 * (p + 1.0), 1.0 / (p - 1.0));
    return amp * std::pow(sech(z), 2.0 / (p - 1.0));
}

State boosted_soliton(const SolitonParams& params, const Grid& grid, double boundary_threshold) {
    params.validate();
    const double g = params.gamma();
    const double scale = std::pow(g, 2.0 / (params.p - 1.0));

    const double edge = 0.9 * grid.half_length;
    const double tail = scale * std::max(q_profile(params.p, g * (edge - params.x0)),
                                         q_profile(params.p, g * (-edge - params.x0)));
    if (tail > boundary_threshold)
        throw std::invalid_argument(
            "grid.half_length: soliton profile exceeds the boundary threshold at |x| = 0.9 L");

    State s;
    s.u1.resize(grid.n);
    s.u2.resize(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        s.u1[j] = scale * q_profile(params.p, g * (grid.nodes[j] - params.x0));
        s.u2[j] = -params.v * s.u1[j];
    }
    s.time = 0.0;
    return s;
}

SmallDataKind small_data_kind_from_string(const std::string& s) {
    if (s == "sech_packet") return SmallDataKind::SechPacket;
    if (s == "gaussian") return SmallDataKind::Gaussian;
    if (s == "filtered_random") return SmallDataKind::FilteredRandom;
    throw std::invalid_argument("initial_data.kind: unknown kind '" + s + "'");
}

std::string to_string(SmallDataKind k) {
    switch (k) {
        case SmallDataKind::SechPacket: return "sech_packet";
        case SmallDataKind::Gaussian: return "gaussian";
        case SmallDataKind::FilteredRandom: return "filtered_random";
    }
    throw std::logic_error("unreachable");
}

namespace {

// Seed-stable uniform in [-1, 1): mt19937_64 output mapped directly, no
// implementation-defined distributions.
class UniformStream {
  public:
    explicit UniformStream(std::uint64_t seed) : gen_(seed) {}
    double next() { return 2.0 * ((gen_() >> 11) * 0x1.0p-53) - 1.0; }

  private:
    std::mt19937_64 gen_;
};

RealField filtered_random_field(UniformStream& stream, const Grid& grid, double k_band) {
    RealField f(grid.n, 0.0);
    const double dk = M_PI / grid.half_length;
    const int j_max = static_cast<int>(std::floor(k_band / dk));
    for (int j = 1; j <= j_max; ++j) {
        const double k = j * dk;
        const double env = std::exp(-k * k);
        const double a = stream.next() * env;
        const double b = stream.next() * env;
        for (int m = 0; m < grid.n; ++m)
            f[m] += a * std::cos(k * grid.nodes[m]) + b * std::sin(k * grid.nodes[m]);
    }
    // Gaussian window localizes, then a hard spectral cut restores the band
    // limit the window smeared.
    const double w = grid.half_length / 6.0;
    for (int m = 0; m < grid.n; ++m) {
        const double x = grid.nodes[m] / w;
        f[m] *= std::exp(-x * x);
    }
    const double cutoff_rule = std::min(1.0, (k_band + 1.0) / (M_PI * (grid.n / 2) / grid.half_length));
    Spectrum s = dealias(to_spectrum(f), grid, cutoff_rule);
    return to_field(s);
}

}  // namespace

State small_data(SmallDataKind kind, double amplitude, std::uint64_t seed, const Grid& grid,
                 double boundary_threshold) {
    if (amplitude < 0.0)
        throw std::invalid_argument("initial_data.amplitude: must be non-negative");

    State s;
    s.u1.assign(grid.n, 0.0);
    s.u2.assign(grid.n, 0.0);
    s.time = 0.0;
    if (amplitude == 0.0) return s;

    switch (kind) {
        case SmallDataKind::SechPacket:
            for (int j = 0; j < grid.n; ++j) s.u1[j] = sech(grid.nodes[j]);
            break;
        case SmallDataKind::Gaussian: {
            const double w = grid.half_length / 16.0;
            for (int j = 0; j < grid.n; ++j) {
                const double x = grid.nodes[j] / w;
                s.u1[j] = std::exp(-0.5 * x * x);
            }
            break;
        }
        case SmallDataKind::FilteredRandom: {
            UniformStream stream(seed);
            const double k_band = std::min(6.0, 0.6 * grid.nyquist());
            s.u1 = filtered_random_field(stream, grid, k_band);
            s.u2 = filtered_random_field(stream, grid, k_band);
            break;
        }
    }

    const double norm = std::sqrt(energy_norm_sq(s, grid));
    if (!(norm > 0.0)) throw std::runtime_error("small_data: degenerate zero field");
    const double scale = amplitude / norm;
    for (int j = 0; j < grid.n; ++j) {
        s.u1[j] *= scale;
        s.u2[j] *= scale;
    }

    if (boundary_magnitude(s, grid) > boundary_threshold)
        throw std::invalid_argument(
            "initial_data: generated data violates the boundary localization contract");
    return s;
}

}  // namespace bousq
