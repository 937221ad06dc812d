#include "bousq/runner.hpp"
#include "bousq/stepper.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

// exit codes: 0 ok, 1 validation error, 2 identity-check failure, 3 instability
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIdentity = 2;
constexpr int kExitInstability = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> t_final;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", args.seed, "override initial_data.seed");
    cmd->add_option("--dt", args.dt, "override stepper.dt");
    cmd->add_option("--t-final", args.t_final, "override t_final");
}

bousq::ExperimentConfig load_config(const CommonArgs& args) {
    auto cfg = bousq::ExperimentConfig::load(args.config_path);
    if (!args.out_dir.empty()) cfg.output.directory = args.out_dir;
    if (args.seed) cfg.initial_data.seed = *args.seed;
    if (args.dt) cfg.stepper.dt = *args.dt;
    if (args.t_final) cfg.t_final = *args.t_final;
    return cfg;
}

void print_summary_line(const bousq::RunSummary& s) {
    std::printf("energy drift       %.3e\n", s.energy_drift_rel);
    std::printf("boundary max       %.3e\n", s.boundary_max);
    std::printf("wall time          %.2f s\n", s.wall_time_s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral simulator and diagnostics for the generalized "
                 "good Boussinesq system"};
    app.require_subcommand(1);

    CommonArgs sim_args, sol_args, vir_args, dec_args;
    std::string flip_term;

    CLI::App* sim = app.add_subcommand("simulate", "evolve and record functional time series");
    add_common(sim, sim_args);
    CLI::App* sol = app.add_subcommand("soliton", "solitary-wave propagation diagnostics");
    add_common(sol, sol_args);
    CLI::App* vir = app.add_subcommand("virial-check",
                                       "verify the virial identities along a trajectory");
    add_common(vir, vir_args);
    vir->add_option("--flip-term", flip_term,
                    "debug hook: negate one rhs term, e.g. J:u2_sq")
        ->default_val("");
    CLI::App* dec = app.add_subcommand("decay-report", "local energy decay trend report");
    add_common(dec, dec_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            auto cfg = load_config(sim_args);
            auto result = bousq::run_simulate(cfg, cfg.output.directory);
            std::printf("simulate: %zu samples -> %s\n", result.trajectory.times.size(),
                        cfg.output.directory.c_str());
            print_summary_line(result.summary);
            return kExitOk;
        }
        if (sol->parsed()) {
            auto cfg = load_config(sol_args);
            auto report = bousq::run_soliton(cfg, cfg.output.directory);
            std::printf("soliton: traveling residual %.3e, translation error %.3e\n",
                        report.traveling_residual, report.translation_error);
            std::printf("amplitude          %.17g (expected %.17g)\n", report.amplitude,
                        report.amplitude_expected);
            print_summary_line(report.summary);
            return kExitOk;
        }
        if (vir->parsed()) {
            auto cfg = load_config(vir_args);
            std::optional<bousq::VirialHook> hook;
            if (!flip_term.empty()) {
                const auto colon = flip_term.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("--flip-term: expected <functional>:<term>");
                hook = bousq::VirialHook{flip_term.substr(0, colon), flip_term.substr(colon + 1)};
            }
            auto result = bousq::run_virial_check(cfg, cfg.output.directory, hook);
            for (const auto& rep : result.identities)
                std::printf("%-8s residual %.3e  normalized %.3e  %s\n", rep.name.c_str(),
                            rep.residual, rep.normalized, rep.pass ? "pass" : "FAIL");
            print_summary_line(result.summary);
            if (!result.all_pass) {
                for (const auto& rep : result.identities)
                    if (!rep.pass) {
                        std::fprintf(stderr, "identity check failed: %s\n", rep.name.c_str());
                        break;
                    }
                return kExitIdentity;
            }
            return kExitOk;
        }
        if (dec->parsed()) {
            auto cfg = load_config(dec_args);
            auto report = bousq::run_decay_report(cfg, cfg.output.directory);
            std::printf("decay-report: analysis window [%g, %g]\n", cfg.t_start,
                        report.analysis_end);
            std::printf("restricted norm    first-quarter min %.3e, last-quarter max %.3e (%s)\n",
                        report.restricted_first_quarter_min, report.restricted_last_quarter_max,
                        report.restricted_decays ? "decays" : "no decay");
            for (const auto& t : report.cumulatives)
                std::printf("%-28s total %.3e  last-quarter growth %.2f%% (%s)\n",
                            t.name.c_str(), t.total, 100.0 * t.last_quarter_growth,
                            t.saturated ? "saturated" : "still growing");
            print_summary_line(report.summary);
            return kExitOk;
        }
    } catch (const bousq::InstabilityError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInstability;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return kExitOk;
}
