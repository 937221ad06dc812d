#include "bousq/stepper.hpp"

#include "bousq/fourier.hpp"

#include <cmath>

namespace bousq {

Scheme scheme_from_string(const std::string& s) {
    if (s == "etdrk4") return Scheme::Etdrk4;
    if (s == "rk4") return Scheme::Rk4;
    throw std::invalid_argument("stepper.scheme: unknown scheme '" + s + "'");
}

std::string to_string(Scheme s) {
    return s == Scheme::Etdrk4 ? "etdrk4" : "rk4";
}

void StepperConfig::validate(const Grid& grid) const {
    if (!(dt > 0.0)) throw std::invalid_argument("stepper.dt: must be positive");
    if (!(dealias_rule > 0.0) || dealias_rule > 1.0)
        throw std::invalid_argument("stepper.dealias_rule: must lie in (0, 1]");
    if (scheme == Scheme::Rk4) {
        if (!(cfl_safety > 0.0))
            throw std::invalid_argument("stepper.cfl_safety: must be positive");
        const double k_max = grid.nyquist();
        const double bound = cfl_safety * grid.spacing / std::sqrt(1.0 + k_max * k_max);
        if (dt > bound)
            throw std::invalid_argument("stepper.dt: exceeds the rk4 stability bound " +
                                        std::to_string(bound));
    }
}

CharacteristicPair to_characteristic(const Spectrum& u1_hat, const Spectrum& u2_hat,
                                     const Grid& grid) {
    if (static_cast<int>(u1_hat.size()) != grid.n || static_cast<int>(u2_hat.size()) != grid.n)
        throw std::invalid_argument("spectrum length does not match grid n_points");
    CharacteristicPair w;
    w.w_plus.resize(grid.n);
    w.w_minus.resize(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double k = grid.wavenumbers[j];
        const double m = std::sqrt(1.0 + k * k);
        w.w_plus[j] = u1_hat[j] + u2_hat[j] / m;
        w.w_minus[j] = u1_hat[j] - u2_hat[j] / m;
    }
    return w;
}

void from_characteristic(const CharacteristicPair& w, const Grid& grid, Spectrum& u1_hat,
                         Spectrum& u2_hat) {
    u1_hat.resize(grid.n);
    u2_hat.resize(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double k = grid.wavenumbers[j];
        const double m = std::sqrt(1.0 + k * k);
        u1_hat[j] = 0.5 * (w.w_plus[j] + w.w_minus[j]);
        u2_hat[j] = 0.5 * m * (w.w_plus[j] - w.w_minus[j]);
    }
}

namespace {

using cd = std::complex<double>;

cd phi_series(cd z, int shift) {
    // sum_{n>=0} z^n / (n + shift)!
    cd term = 1.0;
    double fact = 1.0;
    for (int i = 1; i <= shift; ++i) fact *= i;
    term /= fact;
    cd sum = term;
    for (int n = 1; n <= 26; ++n) {
        term *= z / static_cast<double>(n + shift);
        sum += term;
    }
    return sum;
}

}  // namespace

cd phi1(cd z) {
    if (std::abs(z) < 1.0) return phi_series(z, 1);
    return (std::exp(z) - 1.0) / z;
}

cd phi2(cd z) {
    if (std::abs(z) < 1.0) return phi_series(z, 2);
    return (std::exp(z) - 1.0 - z) / (z * z);
}

cd phi3(cd z) {
    if (std::abs(z) < 1.0) return phi_series(z, 3);
    return (std::exp(z) - 1.0 - z - 0.5 * z * z) / (z * z * z);
}

// Cox-Matthews ETDRK4 coefficients per characteristic mode.
struct Stepper::Tables {
    double h = 0.0;
    // index 0: w_plus (symbol +i k m), index 1: w_minus (symbol -i k m)
    std::vector<cd> E1[2], E2[2], Q[2], f1[2], f2[2], f3[2];
};

Stepper::Tables Stepper::make_tables(double h) const {
    Tables t;
    t.h = h;
    const cd i_unit(0.0, 1.0);
    for (int sign = 0; sign < 2; ++sign) {
        const double sgn = sign == 0 ? 1.0 : -1.0;
        auto& E1 = t.E1[sign];
        auto& E2 = t.E2[sign];
        auto& Q = t.Q[sign];
        auto& f1 = t.f1[sign];
        auto& f2 = t.f2[sign];
        auto& f3 = t.f3[sign];
        E1.resize(grid_.n);
        E2.resize(grid_.n);
        Q.resize(grid_.n);
        f1.resize(grid_.n);
        f2.resize(grid_.n);
        f3.resize(grid_.n);
        for (int j = 0; j < grid_.n; ++j) {
            const cd z = sgn * i_unit * symbol_[j] * h;
            E1[j] = std::exp(z);
            E2[j] = std::exp(0.5 * z);
            Q[j] = 0.5 * h * phi1(0.5 * z);
            const cd p1 = phi1(z), p2 = phi2(z), p3 = phi3(z);
            f1[j] = h * (p1 - 3.0 * p2 + 4.0 * p3);
            f2[j] = h * (p2 - 2.0 * p3);
            f3[j] = h * (4.0 * p3 - p2);
        }
    }
    return t;
}

Stepper::Stepper(Grid grid, Nonlinearity nl, StepperConfig cfg)
    : grid_(std::move(grid)), nl_(std::move(nl)), cfg_(cfg) {
    cfg_.validate(grid_);
    symbol_.resize(grid_.n);
    injection_.resize(grid_.n);
    for (int j = 0; j < grid_.n; ++j) {
        const double k = grid_.wavenumbers[j];
        const double m = std::sqrt(1.0 + k * k);
        symbol_[j] = k * m;
        injection_[j] = k / m;
    }
    symbol_[grid_.n / 2] = 0.0;  // frozen Nyquist, consistent with rhs()
    injection_[grid_.n / 2] = 0.0;
    dt_tables_ = std::make_shared<const Tables>(make_tables(cfg_.dt));
}

void Stepper::nonlinear_term(const CharacteristicPair& w, Spectrum& n_plus,
                             Spectrum& n_minus) const {
    Spectrum u1_hat(grid_.n);
    for (int j = 0; j < grid_.n; ++j) u1_hat[j] = 0.5 * (w.w_plus[j] + w.w_minus[j]);
    RealField u1 = to_field(u1_hat);
    Spectrum f_hat = dealias(to_spectrum(nl_.f(u1)), grid_, cfg_.dealias_rule);
    const cd i_unit(0.0, 1.0);
    n_plus.resize(grid_.n);
    n_minus.resize(grid_.n);
    for (int j = 0; j < grid_.n; ++j) {
        const cd v = i_unit * injection_[j] * f_hat[j];
        n_plus[j] = -v;
        n_minus[j] = v;
    }
}

void Stepper::advance(CharacteristicPair& w, const Tables& t) const {
    const int n = grid_.n;
    if (nl_.is_disabled()) {
        for (int j = 0; j < n; ++j) {
            w.w_plus[j] *= t.E1[0][j];
            w.w_minus[j] *= t.E1[1][j];
        }
        return;
    }

    CharacteristicPair a{Spectrum(n), Spectrum(n)}, b{Spectrum(n), Spectrum(n)},
        c{Spectrum(n), Spectrum(n)};
    Spectrum na_p, na_m, nb_p, nb_m, nc_p, nc_m, nd_p, nd_m;

    nonlinear_term(w, na_p, na_m);
    for (int j = 0; j < n; ++j) {
        a.w_plus[j] = t.E2[0][j] * w.w_plus[j] + t.Q[0][j] * na_p[j];
        a.w_minus[j] = t.E2[1][j] * w.w_minus[j] + t.Q[1][j] * na_m[j];
    }
    nonlinear_term(a, nb_p, nb_m);
    for (int j = 0; j < n; ++j) {
        b.w_plus[j] = t.E2[0][j] * w.w_plus[j] + t.Q[0][j] * nb_p[j];
        b.w_minus[j] = t.E2[1][j] * w.w_minus[j] + t.Q[1][j] * nb_m[j];
    }
    nonlinear_term(b, nc_p, nc_m);
    for (int j = 0; j < n; ++j) {
        c.w_plus[j] = t.E2[0][j] * a.w_plus[j] + t.Q[0][j] * (2.0 * nc_p[j] - na_p[j]);
        c.w_minus[j] = t.E2[1][j] * a.w_minus[j] + t.Q[1][j] * (2.0 * nc_m[j] - na_m[j]);
    }
    nonlinear_term(c, nd_p, nd_m);
    for (int j = 0; j < n; ++j) {
        w.w_plus[j] = t.E1[0][j] * w.w_plus[j] + t.f1[0][j] * na_p[j] +
                      2.0 * t.f2[0][j] * (nb_p[j] + nc_p[j]) + t.f3[0][j] * nd_p[j];
        w.w_minus[j] = t.E1[1][j] * w.w_minus[j] + t.f1[1][j] * na_m[j] +
                       2.0 * t.f2[1][j] * (nb_m[j] + nc_m[j]) + t.f3[1][j] * nd_m[j];
    }
}

void Stepper::advance_rk4(CharacteristicPair& w, double h) const {
    const int n = grid_.n;
    const cd i_unit(0.0, 1.0);
    auto apply_rhs = [&](const CharacteristicPair& v, CharacteristicPair& out) {
        Spectrum np, nm;
        if (!nl_.is_disabled()) nonlinear_term(v, np, nm);
        out.w_plus.resize(n);
        out.w_minus.resize(n);
        for (int j = 0; j < n; ++j) {
            const cd lin = i_unit * symbol_[j];
            out.w_plus[j] = lin * v.w_plus[j] + (np.empty() ? cd(0.0) : np[j]);
            out.w_minus[j] = -lin * v.w_minus[j] + (nm.empty() ? cd(0.0) : nm[j]);
        }
    };
    auto shifted = [&](const CharacteristicPair& base, const CharacteristicPair& k, double c) {
        CharacteristicPair out{Spectrum(n), Spectrum(n)};
        for (int j = 0; j < n; ++j) {
            out.w_plus[j] = base.w_plus[j] + c * k.w_plus[j];
            out.w_minus[j] = base.w_minus[j] + c * k.w_minus[j];
        }
        return out;
    };

    CharacteristicPair k1, k2, k3, k4;
    apply_rhs(w, k1);
    apply_rhs(shifted(w, k1, 0.5 * h), k2);
    apply_rhs(shifted(w, k2, 0.5 * h), k3);
    apply_rhs(shifted(w, k3, h), k4);
    for (int j = 0; j < n; ++j) {
        w.w_plus[j] += h / 6.0 * (k1.w_plus[j] + 2.0 * k2.w_plus[j] + 2.0 * k3.w_plus[j] +
                                  k4.w_plus[j]);
        w.w_minus[j] += h / 6.0 * (k1.w_minus[j] + 2.0 * k2.w_minus[j] + 2.0 * k3.w_minus[j] +
                                   k4.w_minus[j]);
    }
}

namespace {

bool finite_spectrum(const Spectrum& s) {
    for (const auto& z : s)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

}  // namespace

State Stepper::step(const State& state) const {
    require_valid(state, grid_);
    CharacteristicPair w = to_characteristic(to_spectrum(state.u1), to_spectrum(state.u2), grid_);
    if (cfg_.scheme == Scheme::Etdrk4)
        advance(w, *dt_tables_);
    else
        advance_rk4(w, cfg_.dt);

    Spectrum u1_hat, u2_hat;
    from_characteristic(w, grid_, u1_hat, u2_hat);
    State out{to_field(u1_hat), to_field(u2_hat), state.time + cfg_.dt};
    if (!all_finite(out.u1) || !all_finite(out.u2)) throw InstabilityError(out.time);
    return out;
}

Trajectory Stepper::evolve(const State& initial, double t_final,
                           std::span<const FunctionalObserver> observers, double cadence) const {
    require_valid(initial, grid_);
    const double t0 = initial.time;
    if (t_final < t0) throw std::invalid_argument("t_final: must not precede the state time");

    Trajectory traj;
    traj.names.reserve(observers.size());
    traj.series.resize(observers.size());
    for (const auto& obs : observers) traj.names.push_back(obs.name);

    auto sample = [&](const State& s) {
        traj.times.push_back(s.time);
        for (size_t i = 0; i < observers.size(); ++i)
            traj.series[i].push_back(observers[i].eval(s));
    };

    traj.snapshots.push_back(initial);
    sample(initial);
    if (t_final == t0) {
        traj.snapshots.push_back(initial);
        return traj;
    }

    CharacteristicPair w =
        to_characteristic(to_spectrum(initial.u1), to_spectrum(initial.u2), grid_);
    const double dt = cfg_.dt;
    const long n_full = static_cast<long>(std::floor((t_final - t0) / dt + 1e-9));
    double remaining = t_final - (t0 + n_full * dt);
    if (remaining < 1e-12 * std::max(1.0, std::abs(t_final))) remaining = 0.0;

    auto state_at = [&](double t) {
        Spectrum u1_hat, u2_hat;
        from_characteristic(w, grid_, u1_hat, u2_hat);
        return State{to_field(u1_hat), to_field(u2_hat), t};
    };

    long m_next = 1;
    for (long i = 1; i <= n_full; ++i) {
        if (cfg_.scheme == Scheme::Etdrk4)
            advance(w, *dt_tables_);
        else
            advance_rk4(w, dt);
        const double t = t0 + i * dt;
        if (!finite_spectrum(w.w_plus) || !finite_spectrum(w.w_minus))
            throw InstabilityError(t);
        const bool is_last = (i == n_full && remaining == 0.0);
        if (is_last) break;
        if (cadence > 0.0 && t + 1e-9 * dt >= t0 + m_next * cadence) {
            sample(state_at(t));
            m_next = static_cast<long>(std::floor((t - t0) / cadence + 1e-9)) + 1;
        }
    }
    if (remaining > 0.0) {
        if (cfg_.scheme == Scheme::Etdrk4) {
            advance(w, make_tables(remaining));
        } else {
            advance_rk4(w, remaining);
        }
        if (!finite_spectrum(w.w_plus) || !finite_spectrum(w.w_minus))
            throw InstabilityError(t_final);
    }

    State final_state = state_at(t_final);
    if (!all_finite(final_state.u1) || !all_finite(final_state.u2))
        throw InstabilityError(t_final);
    sample(final_state);
    traj.snapshots.push_back(std::move(final_state));
    return traj;
}

}  // namespace bousq
