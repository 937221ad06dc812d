// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier runs live here rather than in the unit tests.

#include "bousq/dynamics.hpp"
#include "bousq/fourier.hpp"
#include "bousq/runner.hpp"
#include "bousq/stepper.hpp"
#include "bousq/virial.hpp"
#include "bousq/waveforms.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

using namespace bousq;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& details) {
    std::printf("criterion %-28s %s  (%s)\n", id.c_str(), pass ? "PASS" : "FAIL",
                details.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::filesystem::path out_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / "bousq_acceptance" / tag;
    std::filesystem::remove_all(dir);
    return dir;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// criteria 1 and 2: integrated virial residuals on small filtered-random data
void virial_identities() {
    Timer timer;
    ExperimentConfig cfg;
    cfg.grid.n = 1024;
    cfg.grid.half_length = 50.0;
    cfg.nonlinearity = {"pure_power", 2.0};
    cfg.stepper.dt = 1e-3;
    cfg.initial_data.kind = "filtered_random";
    cfg.initial_data.amplitude = 0.01;
    cfg.initial_data.seed = 1;
    cfg.scaling_law.kind = "log2";
    cfg.scaling_law.C = 1.0;
    cfg.t_start = 2.0;
    cfg.t_final = 20.0;
    cfg.output.cadence = 0.02;
    cfg.diagnostics.identity_tol = 1e-6;

    auto result = run_virial_check(cfg, out_dir("virial"));
    const double wall = timer.seconds();
    for (const auto& rep : result.identities) {
        const std::string id = rep.name == "J" ? "1 [virial J]" : "2 [virial " + rep.name + "]";
        report(id, rep.pass,
               "normalized residual " + fmt(rep.normalized) + " vs 1e-6, sup|rhs| " +
                   fmt(rep.sup_rhs) + ", " + fmt(wall) + " s");
    }
}

// criteria 3 and 4: energy conservation and soliton exactness
void soliton_criteria() {
    Timer timer;
    ExperimentConfig cfg;
    cfg.grid.n = 1024;
    cfg.grid.half_length = 50.0;
    cfg.nonlinearity = {"pure_power", 2.0};
    cfg.stepper.dt = 1e-3;
    cfg.initial_data.kind = "soliton";
    cfg.initial_data.soliton = {2.0, 0.3, 0.0};
    cfg.scaling_law.kind = "fixed";
    cfg.t_start = 0.0;
    cfg.t_final = 20.0;
    cfg.output.cadence = 0.1;

    auto rep = run_soliton(cfg, out_dir("soliton"));
    report("3 [energy conservation]", rep.summary.energy_drift_rel <= 1e-8,
           "relative drift " + fmt(rep.summary.energy_drift_rel) + " vs 1e-8, " +
               fmt(timer.seconds()) + " s");
    report("4a [traveling residual]", rep.traveling_residual <= 1e-8,
           "L_inf residual " + fmt(rep.traveling_residual) + " vs 1e-8");
    report("4b [translated profile]", rep.translation_error <= 1e-4,
           "L_inf error at T=20 " + fmt(rep.translation_error) + " vs 1e-4");

    Grid g = Grid::make(1024, 50.0);
    State fast = boosted_soliton({2.0, 0.6, 0.0}, g);
    const double amp = fast.u1[g.n / 2];
    report("4c [boost amplitude]", std::abs(amp - 0.96) <= 1e-13,
           "u1(x0) - 0.96 = " + fmt(amp - 0.96));
}

// criterion 5: fourth-order self-convergence and exact linear stepping
//
// A bare soliton translates so rigidly that the differences between the
// pinned step sizes sit at the round-off floor (stable speeds) or are
// contaminated by the physical orbital instability (slow speeds), so the
// ladder rides a stable soliton carrying a small oscillatory probe packet
// whose fast phases expose the time-integration error.
void integrator_order() {
    Timer timer;
    Grid g = Grid::make(1024, 50.0);
    auto nl = Nonlinearity::pure_power(2.0);
    State init = boosted_soliton({2.0, 0.75, 0.0}, g, 1e-8);
    for (int j = 0; j < g.n; ++j) {
        const double y = g.nodes[j] + 20.0;
        init.u1[j] += 0.1 / std::cosh(y) * std::cos(8.0 * y);
    }
    auto final_u1 = [&](double dt) {
        Stepper st(g, nl, {.dt = dt});
        return st.evolve(init, 20.0, {}, 0.0).final_state().u1;
    };
    RealField u_a = final_u1(4e-3), u_b = final_u1(2e-3), u_c = final_u1(1e-3);
    double e1 = 0.0, e2 = 0.0;
    for (int j = 0; j < g.n; ++j) {
        e1 = std::max(e1, std::abs(u_a[j] - u_b[j]));
        e2 = std::max(e2, std::abs(u_b[j] - u_c[j]));
    }
    const double order = std::log2(e1 / e2);
    report("5a [self-convergence order]", order >= 3.8 && order <= 4.2,
           "order " + fmt(order) + " in [3.8, 4.2], coarse error " + fmt(e1) + ", " +
               fmt(timer.seconds()) + " s");

    std::mt19937_64 gen(2024);
    CharacteristicPair w0{Spectrum(g.n, 0.0), Spectrum(g.n, 0.0)};
    auto mode = [&gen] {
        const double mag = 0.5 + 0.5 * ((gen() >> 11) * 0x1.0p-53);
        const double phase = 2.0 * M_PI * ((gen() >> 11) * 0x1.0p-53);
        return std::polar(mag, phase);
    };
    for (int j = 1; j < g.n / 2; ++j) {
        w0.w_plus[j] = mode();
        w0.w_plus[g.n - j] = std::conj(w0.w_plus[j]);
        w0.w_minus[j] = mode();
        w0.w_minus[g.n - j] = std::conj(w0.w_minus[j]);
    }
    w0.w_plus[0] = 1.0;
    w0.w_minus[0] = 1.0;
    Spectrum u1_hat, u2_hat;
    from_characteristic(w0, g, u1_hat, u2_hat);
    State lin{to_field(u1_hat), to_field(u2_hat), 0.0};
    const double dt = 0.5;
    Stepper st(g, Nonlinearity::disabled(), {.dt = dt});
    State stepped = st.step(lin);
    auto w1 = to_characteristic(to_spectrum(stepped.u1), to_spectrum(stepped.u2), g);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) {
        if (j == g.n / 2) continue;
        const long double k = g.wavenumbers[j];
        const long double theta = k * sqrtl(1.0L + k * k) * static_cast<long double>(dt);
        const std::complex<double> rot(static_cast<double>(cosl(theta)),
                                       static_cast<double>(sinl(theta)));
        worst = std::max(worst, std::abs(w1.w_plus[j] / (w0.w_plus[j] * rot) - 1.0));
        worst = std::max(worst, std::abs(w1.w_minus[j] / (w0.w_minus[j] / rot) - 1.0));
    }
    report("5b [linear exactness]", worst <= 1e-12,
           "max per-mode relative error " + fmt(worst) + " vs 1e-12");
}

// criterion 6: decay trends for small sech data inside the shrunken cone
DecayReport decay_trends() {
    Timer timer;
    ExperimentConfig cfg;
    cfg.grid.n = 4096;
    cfg.grid.half_length = 200.0;
    cfg.nonlinearity = {"pure_power", 2.0};
    cfg.stepper.dt = 1e-3;
    cfg.initial_data.kind = "sech_packet";
    cfg.initial_data.amplitude = 0.01;
    cfg.scaling_law.kind = "log2";
    cfg.scaling_law.C = 1.0;
    cfg.scaling_law.lambda0 = 10.0;
    cfg.t_start = 2.0;
    cfg.t_final = 200.0;
    cfg.output.cadence = 0.1;
    cfg.diagnostics.saturation_threshold = 0.05;

    auto rep = run_decay_report(cfg, out_dir("decay"));
    const double wall = timer.seconds();
    report("6a [restricted-norm decay]", rep.restricted_decays,
           "last-quarter max " + fmt(rep.restricted_last_quarter_max) + " < first-quarter min " +
               fmt(rep.restricted_first_quarter_min) + ", window end " +
               fmt(rep.analysis_end) + ", " + fmt(wall) + " s");
    for (const auto& t : rep.cumulatives)
        report("6b [" + t.name + "]", t.saturated,
               "last-quarter growth " + fmt(100.0 * t.last_quarter_growth) + "% vs 5%");
    return rep;
}

// criterion 7: the stationary soliton does not decay under the same pipeline.
//
// The v=0 soliton is orbitally unstable (speeds with v^2 < (p-1)/4 are), so
// round-off-seeded growth ends the run near t ~ 70 in double precision; the
// criterion is stated over [2, 100] and is reported faithfully, with the
// horizon up to which the control does hold.
void negative_control(bool small_data_decays) {
    Timer timer;
    ExperimentConfig cfg;
    cfg.grid.n = 1024;
    cfg.grid.half_length = 50.0;
    cfg.nonlinearity = {"pure_power", 2.0};
    cfg.stepper.dt = 1e-3;
    cfg.initial_data.kind = "soliton";
    cfg.initial_data.soliton = {2.0, 0.0, 0.0};
    cfg.scaling_law.kind = "fixed";
    cfg.scaling_law.lambda0 = 10.0;
    cfg.t_start = 2.0;
    cfg.t_final = 100.0;
    cfg.output.cadence = 0.1;

    std::string note;
    bool within_band = false;
    double hold_until = cfg.t_start;
    double worst_before_growth = 0.0;
    try {
        auto rep = run_decay_report(cfg, out_dir("control"));
        const auto& series = rep.trajectory.series_for("weighted_phi1_scaled");
        const double w0 = series.front().value;
        double worst = 0.0;
        within_band = true;
        for (const auto& fv : series) {
            const double dev = std::abs(fv.value - w0) / w0;
            worst = std::max(worst, dev);
            if (dev <= 0.10 && within_band) hold_until = fv.time;
            if (dev > 0.10) within_band = false;
        }
        worst_before_growth = worst;
        note = "max phi1-norm deviation " + fmt(100.0 * worst) + "% vs 10%";
    } catch (const InstabilityError& e) {
        note = "run aborted by the slow-soliton orbital instability at t=" + fmt(e.time);
        // measure how long the control does hold before the instability
        cfg.t_final = 50.0;
        auto rep = run_decay_report(cfg, out_dir("control_hold"));
        const auto& series = rep.trajectory.series_for("weighted_phi1_scaled");
        const double w0 = series.front().value;
        for (const auto& fv : series) {
            const double dev = std::abs(fv.value - w0) / w0;
            worst_before_growth = std::max(worst_before_growth, dev);
            if (dev <= 0.10) hold_until = fv.time;
        }
        note += ", deviation " + fmt(100.0 * worst_before_growth) + "% up to t=" +
                fmt(hold_until);
    }
    report("7 [soliton no-decay control]", within_band && small_data_decays,
           note + ", small-data 6a " + (small_data_decays ? "passed" : "failed") + ", " +
               fmt(timer.seconds()) + " s");
}

// criterion 8: discrete integration-by-parts suite on 100 random fields
void spectral_properties() {
    Grid g = Grid::make(256, 20.0);
    std::mt19937_64 gen(42);
    auto smooth = [&]() {
        Spectrum s(g.n, 0.0);
        const double dk = M_PI / g.half_length;
        auto u = [&gen] { return 2.0 * ((gen() >> 11) * 0x1.0p-53) - 1.0; };
        s[0] = u();
        for (int j = 1; j * dk <= 8.0 && j < g.n / 2; ++j) {
            const double env = std::exp(-0.25 * (j * dk) * (j * dk));
            s[j] = {u() * env, u() * env};
            s[g.n - j] = std::conj(s[j]);
        }
        RealField f = to_field(s);
        double n2 = 0.0;
        for (double v : f) n2 += v * v * g.spacing;
        for (double& v : f) v /= std::sqrt(n2);
        return f;
    };
    double worst_total = 0.0, worst_anti = 0.0, worst_compose = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        RealField f = smooth(), h = smooth();
        worst_total = std::max(worst_total, std::abs(integrate(spectral_derivative(f, g, 1), g)));
        RealField df = spectral_derivative(f, g, 1), dh = spectral_derivative(h, g, 1);
        RealField q(g.n);
        for (int j = 0; j < g.n; ++j) q[j] = f[j] * dh[j] + h[j] * df[j];
        worst_anti = std::max(worst_anti, std::abs(integrate(q, g)));
        RealField ddf = spectral_derivative(df, g, 1), d2f = spectral_derivative(f, g, 2);
        double scale = 0.0, diff = 0.0;
        for (int j = 0; j < g.n; ++j) {
            scale = std::max(scale, std::abs(d2f[j]));
            diff = std::max(diff, std::abs(ddf[j] - d2f[j]));
        }
        worst_compose = std::max(worst_compose, diff / std::max(scale, 1.0));
    }
    report("8a [total derivative]", worst_total <= 1e-12, "max " + fmt(worst_total) + " vs 1e-12");
    report("8b [antisymmetry]", worst_anti <= 1e-10, "max " + fmt(worst_anti) + " vs 1e-10");
    report("8c [derivative composition]", worst_compose <= 1e-10,
           "max relative " + fmt(worst_compose) + " vs 1e-10");
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    try {
        virial_identities();
        soliton_criteria();
        integrator_order();
        auto decay = decay_trends();
        negative_control(decay.restricted_decays);
        spectral_properties();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%s\n", g_failures == 0 ? "all criteria passed" : "FAILURES PRESENT");
    return g_failures == 0 ? 0 : 1;
}
