#include "bousq/runner.hpp"

#include "bousq/csv.hpp"
#include "bousq/dynamics.hpp"
#include "bousq/fourier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace bousq {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RunContext {
    Grid grid;
    Nonlinearity nl = Nonlinearity::disabled();
    ScalingLaw law;
    WeightFamily fam;
    double lambda0 = 10.0;
    double dealias_rule = kDefaultDealiasRule;
};

RunContext make_context(const ExperimentConfig& cfg) {
    RunContext ctx;
    ctx.grid = cfg.make_grid();
    ctx.nl = cfg.make_nonlinearity();
    ctx.law = cfg.make_scaling_law();
    ctx.lambda0 = cfg.scaling_law.lambda0;
    ctx.dealias_rule = cfg.stepper.dealias_rule;
    return ctx;
}

FunctionalObserver make_observer(const std::string& name, const RunContext& ctx) {
    auto fv_scalar = [](std::string nm, const State& s, double v) {
        FunctionalValue fv;
        fv.name = std::move(nm);
        fv.time = s.time;
        fv.value = v;
        return fv;
    };
    if (name == "energy")
        return {name, [ctx, fv_scalar](const State& s) {
                    return fv_scalar("energy", s, energy(s, ctx.nl, ctx.grid));
                }};
    if (name == "boundary")
        return {name, [ctx, fv_scalar](const State& s) {
                    return fv_scalar("boundary", s, boundary_magnitude(s, ctx.grid));
                }};
    if (name == "J")
        return {name,
                [ctx](const State& s) { return J_eval(s, ctx.fam, ctx.law, ctx.grid); }};
    if (name == "J_rhs")
        return {name, [ctx](const State& s) {
                    return J_rhs(s, ctx.fam, ctx.law, ctx.nl, ctx.grid);
                }};
    if (name == "I_plus")
        return {name,
                [ctx](const State& s) { return I_plus_eval(s, ctx.fam, ctx.law, ctx.grid); }};
    if (name == "I_plus_rhs")
        return {name, [ctx](const State& s) {
                    return I_plus_rhs(s, ctx.fam, ctx.law, ctx.nl, ctx.grid);
                }};
    if (name == "I_minus")
        return {name,
                [ctx](const State& s) { return I_minus_eval(s, ctx.fam, ctx.law, ctx.grid); }};
    if (name == "I_minus_rhs")
        return {name, [ctx](const State& s) {
                    return I_minus_rhs(s, ctx.fam, ctx.law, ctx.nl, ctx.grid);
                }};
    if (name == "E_phi1")
        return {name, [ctx](const State& s) {
                    return E_phi1_eval(s, ctx.fam, ctx.law, ctx.nl, ctx.grid);
                }};
    if (name == "E_phi1_rhs")
        return {name, [ctx](const State& s) {
                    return E_phi1_rhs(s, ctx.fam, ctx.law, ctx.nl, ctx.grid);
                }};
    if (name == "weighted_phi0_scaled")
        return {name, [ctx](const State& s) {
                    return weighted_norm(s, WeightedNormKind::Phi0Scaled, ctx.law, ctx.lambda0,
                                         ctx.grid);
                }};
    if (name == "weighted_phi0_fixed")
        return {name, [ctx](const State& s) {
                    return weighted_norm(s, WeightedNormKind::Phi0Fixed, ctx.law, ctx.lambda0,
                                         ctx.grid);
                }};
    if (name == "weighted_phi1_scaled")
        return {name, [ctx](const State& s) {
                    return weighted_norm(s, WeightedNormKind::Phi1Scaled, ctx.law, ctx.lambda0,
                                         ctx.grid);
                }};
    if (name == "restricted_norm")
        return {name, [ctx, fv_scalar](const State& s) {
                    const double r2 = restricted_norm_sq(s, ctx.law.lambda(s.time), ctx.grid);
                    return fv_scalar("restricted_norm", s, std::sqrt(r2));
                }};
    if (name == "smoothing")
        return {name, [ctx](const State& s) {
                    return smoothing_density(s, ctx.fam, ctx.law, ctx.grid);
                }};
    throw std::invalid_argument("output.functionals: unknown functional '" + name + "'");
}

std::vector<FunctionalObserver> make_observers(const std::vector<std::string>& names,
                                               const RunContext& ctx) {
    std::vector<FunctionalObserver> obs;
    obs.reserve(names.size());
    for (const auto& n : names) obs.push_back(make_observer(n, ctx));
    return obs;
}

// "energy" and "boundary" always recorded, user extras deduplicated after.
std::vector<std::string> with_required(std::vector<std::string> names) {
    std::vector<std::string> out{"energy", "boundary"};
    for (auto& n : names)
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(std::move(n));
    return out;
}

RunSummary summarize(const Trajectory& traj, const ExperimentConfig& cfg,
                     Clock::time_point t_begin) {
    RunSummary s;
    const auto& e = traj.series_for("energy");
    s.energy_initial = e.front().value;
    s.energy_final = e.back().value;
    const double scale = std::max(std::abs(s.energy_initial), 1e-300);
    for (const auto& fv : e)
        s.energy_drift_rel = std::max(s.energy_drift_rel,
                                      std::abs(fv.value - s.energy_initial) / scale);
    for (const auto& fv : traj.series_for("boundary")) {
        s.boundary_max = std::max(s.boundary_max, fv.value);
        if (!s.first_boundary_violation && fv.value > cfg.diagnostics.boundary_threshold)
            s.first_boundary_violation = fv.time;
    }
    s.wall_time_s = std::chrono::duration<double>(Clock::now() - t_begin).count();
    return s;
}

json summary_base(const ExperimentConfig& cfg, const RunSummary& s) {
    json j;
    j["config"] = cfg.to_json();
    j["energy"] = {{"initial", s.energy_initial},
                   {"final", s.energy_final},
                   {"drift_rel", s.energy_drift_rel}};
    j["boundary"] = {{"max", s.boundary_max},
                     {"threshold", cfg.diagnostics.boundary_threshold}};
    if (s.first_boundary_violation)
        j["boundary"]["first_violation_time"] = *s.first_boundary_violation;
    else
        j["boundary"]["first_violation_time"] = nullptr;
    j["wall_time_s"] = s.wall_time_s;
    return j;
}

void write_summary(const std::filesystem::path& dir, json j) {
    std::ofstream out(dir / "summary.json");
    if (!out) throw std::runtime_error("cannot write summary.json");
    out << j.dump(2) << "\n";
}

void write_trajectory_csvs(const std::filesystem::path& dir, const Trajectory& traj) {
    for (size_t i = 0; i < traj.names.size(); ++i)
        write_functional_csv(dir / (traj.names[i] + ".csv"), traj.series[i]);
}

void write_state_csv(const std::filesystem::path& file, const State& s, const Grid& grid) {
    std::vector<std::vector<double>> cols(3);
    for (int j = 0; j < grid.n; ++j) {
        cols[0].push_back(grid.nodes[j]);
        cols[1].push_back(s.u1[j]);
        cols[2].push_back(s.u2[j]);
    }
    write_columns_csv(file, {"x", "u1", "u2"}, cols);
}

double lagrange_eval(const std::vector<double>& t, const std::vector<double>& v, size_t s,
                     size_t count, double x) {
    double sum = 0.0;
    for (size_t j = s; j < s + count; ++j) {
        double w = v[j];
        for (size_t m = s; m < s + count; ++m)
            if (m != j) w *= (x - t[m]) / (t[j] - t[m]);
        sum += w;
    }
    return sum;
}

}  // namespace

double integrate_series(const std::vector<double>& times, const std::vector<double>& values) {
    if (times.size() != values.size())
        throw std::invalid_argument("integrate_series: length mismatch");
    const size_t n = times.size();
    if (n < 2) return 0.0;
    const size_t count = std::min<size_t>(4, n);
    double total = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) {
        size_t s = (i == 0) ? 0 : i - 1;
        s = std::min(s, n - count);
        const double a = times[i], b = times[i + 1], h = b - a;
        // two-point Gauss, exact for the interpolating cubic
        const double c = 0.5 * (a + b), r = 0.5 * h / std::sqrt(3.0);
        total += 0.5 * h *
                 (lagrange_eval(times, values, s, count, c - r) +
                  lagrange_eval(times, values, s, count, c + r));
    }
    return total;
}

double group_speed(double k) { return (1.0 + 2.0 * k * k) / std::sqrt(1.0 + k * k); }

double wraparound_time(const State& initial, const Grid& grid, double energy_floor,
                       double amplitude_floor) {
    Spectrum u1_hat = to_spectrum(initial.u1);
    Spectrum u2_hat = to_spectrum(initial.u2);
    std::vector<double> e(grid.n);
    double e_peak = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        const double k = grid.wavenumbers[j];
        e[j] = (1.0 + k * k) * std::norm(u1_hat[j]) + std::norm(u2_hat[j]);
        e_peak = std::max(e_peak, e[j]);
    }
    if (!(e_peak > 0.0)) return kInf;
    double k_edge = 0.0;
    for (int j = 0; j < grid.n; ++j)
        if (e[j] >= energy_floor * e_peak) k_edge = std::max(k_edge, std::abs(grid.wavenumbers[j]));

    double a_peak = 0.0;
    for (int j = 0; j < grid.n; ++j)
        a_peak = std::max({a_peak, std::abs(initial.u1[j]), std::abs(initial.u2[j])});
    double x_edge = 0.0;
    for (int j = 0; j < grid.n; ++j)
        if (std::max(std::abs(initial.u1[j]), std::abs(initial.u2[j])) >= amplitude_floor * a_peak)
            x_edge = std::max(x_edge, std::abs(grid.nodes[j]));

    // out to the boundary and back to the center: a wrapped tail can only
    // contaminate the cone statistics once it has covered ~2L
    return initial.time + (2.0 * grid.half_length - x_edge) / group_speed(k_edge);
}

SimulateResult run_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    cfg.validate();
    const auto t_begin = Clock::now();
    std::filesystem::create_directories(out_dir);

    RunContext ctx = make_context(cfg);
    const auto names = with_required(cfg.output.functionals);
    const auto observers = make_observers(names, ctx);

    State init = cfg.make_initial_state(ctx.grid);
    Stepper stepper(ctx.grid, ctx.nl, cfg.make_stepper_config());
    SimulateResult result;
    result.trajectory = stepper.evolve(init, cfg.t_final, observers, cfg.output.cadence);
    result.summary = summarize(result.trajectory, cfg, t_begin);

    write_trajectory_csvs(out_dir, result.trajectory);
    write_summary(out_dir, summary_base(cfg, result.summary));
    return result;
}

VirialCheckResult run_virial_check(const ExperimentConfig& cfg,
                                   const std::filesystem::path& out_dir,
                                   const std::optional<VirialHook>& hook) {
    cfg.validate();
    const auto t_begin = Clock::now();
    std::filesystem::create_directories(out_dir);

    RunContext ctx = make_context(cfg);
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"J", "J_rhs"},
        {"I_plus", "I_plus_rhs"},
        {"I_minus", "I_minus_rhs"},
        {"E_phi1", "E_phi1_rhs"}};

    std::vector<std::string> names{"energy", "boundary"};
    for (const auto& [f, r] : pairs) {
        names.push_back(f);
        names.push_back(r);
    }
    auto observers = make_observers(names, ctx);
    if (hook) {
        bool known = false;
        for (const auto& [f, r] : pairs) known = known || f == hook->functional;
        if (!known)
            throw std::invalid_argument("virial hook: unknown functional '" + hook->functional +
                                        "'");
        for (auto& obs : observers) {
            if (obs.name != hook->functional + "_rhs") continue;
            auto inner = obs.eval;
            const std::string term = hook->term;
            obs.eval = [inner, term](const State& s) {
                FunctionalValue fv = inner(s);
                (void)fv.term(term);  // throws if the term does not exist
                for (auto& [k, v] : fv.terms)
                    if (k == term) v = -v;
                fv.value = fv.sum_of_terms();
                return fv;
            };
        }
    }

    State init = cfg.make_initial_state(ctx.grid);
    Stepper stepper(ctx.grid, ctx.nl, cfg.make_stepper_config());
    VirialCheckResult result;
    result.trajectory = stepper.evolve(init, cfg.t_final, observers, cfg.output.cadence);
    result.summary = summarize(result.trajectory, cfg, t_begin);

    const auto& times = result.trajectory.times;
    const double span = cfg.t_final - cfg.t_start;
    result.all_pass = true;
    for (const auto& [f, r] : pairs) {
        const auto& eval_series = result.trajectory.series_for(f);
        const auto& rhs_series = result.trajectory.series_for(r);
        IdentityReport rep;
        rep.name = f;
        rep.delta = eval_series.back().value - eval_series.front().value;
        std::vector<double> rv(rhs_series.size());
        for (size_t i = 0; i < rhs_series.size(); ++i) rv[i] = rhs_series[i].value;
        rep.integral_rhs = integrate_series(times, rv);
        for (double v : rv) rep.sup_rhs = std::max(rep.sup_rhs, std::abs(v));
        rep.residual = std::abs(rep.delta - rep.integral_rhs);
        rep.normalized =
            span > 0.0 ? rep.residual / (span * std::max(1.0, rep.sup_rhs)) : 0.0;
        rep.pass = rep.normalized <= cfg.diagnostics.identity_tol;
        result.all_pass = result.all_pass && rep.pass;
        result.identities.push_back(rep);
    }

    write_trajectory_csvs(out_dir, result.trajectory);
    json extra = summary_base(cfg, result.summary);
    extra["identity_tol"] = cfg.diagnostics.identity_tol;
    json ids = json::array();
    for (const auto& rep : result.identities)
        ids.push_back({{"name", rep.name},
                       {"delta", rep.delta},
                       {"integral_rhs", rep.integral_rhs},
                       {"residual", rep.residual},
                       {"sup_rhs", rep.sup_rhs},
                       {"normalized_residual", rep.normalized},
                       {"pass", rep.pass}});
    extra["identities"] = ids;
    extra["all_pass"] = result.all_pass;
    write_summary(out_dir, extra);
    return result;
}

namespace {

// Index of the last sample at or before the target time.
size_t sample_at_or_before(const std::vector<double>& times, double target) {
    size_t idx = 0;
    for (size_t i = 0; i < times.size(); ++i)
        if (times[i] <= target + 1e-12) idx = i;
    return idx;
}

}  // namespace

DecayReport run_decay_report(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    cfg.validate();
    const auto t_begin = Clock::now();
    std::filesystem::create_directories(out_dir);

    RunContext ctx = make_context(cfg);
    const std::vector<std::string> names{
        "energy",          "boundary",       "weighted_phi0_scaled", "weighted_phi0_fixed",
        "weighted_phi1_scaled", "restricted_norm", "smoothing"};
    auto observers = make_observers(names, ctx);

    State init = cfg.make_initial_state(ctx.grid);
    const double wrap =
        cfg.diagnostics.clip_at_wraparound
            ? wraparound_time(init, ctx.grid, cfg.diagnostics.clip_energy_floor,
                              cfg.diagnostics.clip_amplitude_floor)
            : kInf;

    Stepper stepper(ctx.grid, ctx.nl, cfg.make_stepper_config());
    DecayReport report;
    report.trajectory = stepper.evolve(init, cfg.t_final, observers, cfg.output.cadence);
    report.summary = summarize(report.trajectory, cfg, t_begin);
    report.wraparound_time = wrap;
    report.analysis_end = std::min(cfg.t_final, wrap);

    const auto& times = report.trajectory.times;
    const size_t n = times.size();
    std::vector<double> g_scaled(n), g_fixed(n), g_smooth(n), restricted(n);
    {
        const auto& ws = report.trajectory.series_for("weighted_phi0_scaled");
        const auto& wf = report.trajectory.series_for("weighted_phi0_fixed");
        const auto& sm = report.trajectory.series_for("smoothing");
        const auto& rn = report.trajectory.series_for("restricted_norm");
        for (size_t i = 0; i < n; ++i) {
            const double lam = ctx.law.lambda(times[i]);
            g_scaled[i] = ws[i].value / lam;
            g_fixed[i] = wf[i].value;
            g_smooth[i] = sm[i].value / lam;
            restricted[i] = rn[i].value;
        }
    }
    const double amp = cfg.initial_data.amplitude;
    const double fixed_denom =
        (cfg.initial_data.kind != "soliton" && amp > 0.0) ? ctx.lambda0 * amp * amp : 1.0;

    // cumulative trapezoid integrals (trend diagnostics, not identity checks)
    std::vector<double> cum_scaled(n, 0.0), cum_fixed(n, 0.0), cum_smooth(n, 0.0);
    for (size_t i = 1; i < n; ++i) {
        const double h = times[i] - times[i - 1];
        cum_scaled[i] = cum_scaled[i - 1] + 0.5 * h * (g_scaled[i] + g_scaled[i - 1]);
        cum_fixed[i] = cum_fixed[i - 1] + 0.5 * h * (g_fixed[i] + g_fixed[i - 1]) / fixed_denom;
        cum_smooth[i] = cum_smooth[i - 1] + 0.5 * h * (g_smooth[i] + g_smooth[i - 1]);
    }

    const double a = cfg.t_start;
    const double b = report.analysis_end;
    const double q = 0.25 * (b - a);
    double first_min = kInf, last_max = -kInf;
    for (size_t i = 0; i < n; ++i) {
        if (times[i] <= a + q + 1e-12) first_min = std::min(first_min, restricted[i]);
        if (times[i] >= b - q - 1e-12 && times[i] <= b + 1e-12)
            last_max = std::max(last_max, restricted[i]);
    }
    report.restricted_first_quarter_min = first_min;
    report.restricted_last_quarter_max = last_max;
    report.restricted_decays = (last_max < first_min) || last_max == 0.0;

    auto trend = [&](const std::string& nm, const std::vector<double>& cum) {
        CumulativeTrend t;
        t.name = nm;
        const size_t ib = sample_at_or_before(times, b);
        const size_t iq = sample_at_or_before(times, b - q);
        t.total = cum[ib];
        t.last_quarter_growth = t.total > 0.0 ? (cum[ib] - cum[iq]) / t.total : 0.0;
        t.saturated = t.last_quarter_growth <= cfg.diagnostics.saturation_threshold;
        return t;
    };
    report.cumulatives.push_back(trend("integration_scaled", cum_scaled));
    report.cumulatives.push_back(trend("integration_fixed_normalized", cum_fixed));
    report.cumulatives.push_back(trend("smoothing", cum_smooth));
    report.all_pass = report.restricted_decays;
    for (const auto& t : report.cumulatives) report.all_pass = report.all_pass && t.saturated;

    write_trajectory_csvs(out_dir, report.trajectory);
    write_columns_csv(out_dir / "cumulative.csv",
                      {"time", "integration_scaled", "integration_fixed_normalized",
                       "smoothing"},
                      {times, cum_scaled, cum_fixed, cum_smooth});

    json extra = summary_base(cfg, report.summary);
    extra["decay"] = {
        {"wraparound_time",
         std::isfinite(report.wraparound_time) ? json(report.wraparound_time) : json(nullptr)},
        {"analysis_end", report.analysis_end},
        {"cone_factor", cone_factor()},
        {"restricted_norm",
         {{"first_quarter_min", report.restricted_first_quarter_min},
          {"last_quarter_max", report.restricted_last_quarter_max},
          {"decays", report.restricted_decays}}}};
    json cums = json::array();
    for (const auto& t : report.cumulatives)
        cums.push_back({{"name", t.name},
                        {"total", t.total},
                        {"last_quarter_growth", t.last_quarter_growth},
                        {"saturated", t.saturated}});
    extra["decay"]["cumulatives"] = cums;
    extra["decay"]["all_pass"] = report.all_pass;
    write_summary(out_dir, extra);
    return report;
}

SolitonReport run_soliton(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    if (cfg.initial_data.kind != "soliton")
        throw std::invalid_argument("initial_data.kind: the soliton run requires kind 'soliton'");
    cfg.validate();
    const auto t_begin = Clock::now();
    std::filesystem::create_directories(out_dir);

    RunContext ctx = make_context(cfg);
    if (ctx.nl.is_disabled())
        throw std::invalid_argument("nonlinearity.variant: the soliton run needs a nonlinearity");
    if (ctx.nl.p() != cfg.initial_data.soliton.p)
        throw std::invalid_argument("initial_data.soliton.p: must equal nonlinearity.p");

    const auto& sol = cfg.initial_data.soliton;
    State init = cfg.make_initial_state(ctx.grid);

    SolitonReport report;
    {
        RhsResult r = rhs(init, ctx.nl, ctx.grid, ctx.dealias_rule);
        RealField du1 = spectral_derivative(init.u1, ctx.grid, 1);
        RealField du2 = spectral_derivative(init.u2, ctx.grid, 1);
        for (int j = 0; j < ctx.grid.n; ++j) {
            report.traveling_residual =
                std::max({report.traveling_residual, std::abs(r.du1[j] + sol.v * du1[j]),
                          std::abs(r.du2[j] + sol.v * du2[j])});
        }
    }
    {
        long j_near = std::lround((sol.x0 + ctx.grid.half_length) / ctx.grid.spacing);
        j_near = std::clamp(j_near, 0L, static_cast<long>(ctx.grid.n - 1));
        report.amplitude = init.u1[j_near];
        const double g = std::sqrt(1.0 - sol.v * sol.v);
        report.amplitude_expected = std::pow(g, 2.0 / (sol.p - 1.0)) * q_profile(sol.p, 0.0);
    }

    auto observers = make_observers({"energy", "boundary"}, ctx);
    Stepper stepper(ctx.grid, ctx.nl, cfg.make_stepper_config());
    report.trajectory = stepper.evolve(init, cfg.t_final, observers, cfg.output.cadence);
    report.summary = summarize(report.trajectory, cfg, t_begin);

    {
        const State& fin = report.trajectory.final_state();
        const double g = std::sqrt(1.0 - sol.v * sol.v);
        const double scale = std::pow(g, 2.0 / (sol.p - 1.0));
        const double shift = sol.x0 + sol.v * (cfg.t_final - cfg.t_start);
        for (int j = 0; j < ctx.grid.n; ++j) {
            const double target = scale * q_profile(sol.p, g * (ctx.grid.nodes[j] - shift));
            report.translation_error =
                std::max({report.translation_error, std::abs(fin.u1[j] - target),
                          std::abs(fin.u2[j] + sol.v * target)});
        }
    }

    write_trajectory_csvs(out_dir, report.trajectory);
    write_state_csv(out_dir / "state_initial.csv", report.trajectory.initial_state(), ctx.grid);
    write_state_csv(out_dir / "state_final.csv", report.trajectory.final_state(), ctx.grid);
    json extra = summary_base(cfg, report.summary);
    extra["soliton"] = {{"traveling_residual", report.traveling_residual},
                        {"amplitude", report.amplitude},
                        {"amplitude_expected", report.amplitude_expected},
                        {"translation_error", report.translation_error}};
    write_summary(out_dir, extra);
    return report;
}

}  // namespace bousq
