#pragma once

#include "bousq/nonlinearity.hpp"
#include "bousq/state.hpp"
#include "bousq/stepper.hpp"
#include "bousq/waveforms.hpp"
#include "bousq/weights.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace bousq {

/// Full experiment description. Serializes to/from JSON with the same field
/// names; unknown keys are rejected.
struct ExperimentConfig {
    struct GridSection {
        int n = 1024;
        double half_length = 50.0;
    } grid;

    struct NonlinearitySection {
        std::string variant = "pure_power";  // signed_power | pure_power | disabled
        double p = 2.0;
    } nonlinearity;

    struct StepperSection {
        std::string scheme = "etdrk4";  // etdrk4 | rk4
        double dt = 1e-3;
        double dealias_rule = kDefaultDealiasRule;
        double cfl_safety = 0.8;
    } stepper;

    struct SolitonSection {
        double p = 2.0;
        double v = 0.3;
        double x0 = 0.0;
    };

    struct InitialDataSection {
        std::string kind = "sech_packet";  // sech_packet | gaussian | filtered_random | soliton
        double amplitude = 0.01;
        std::uint64_t seed = 1;
        SolitonSection soliton;
    } initial_data;

    struct ScalingLawSection {
        std::string kind = "log2";  // log2 | log_1_plus_eps | loglog | log1 | fixed
        double C = 1.0;
        double eps = 0.1;
        double lambda0 = 10.0;
    } scaling_law;

    struct OutputSection {
        double cadence = 0.1;
        std::string directory = "out";
        std::vector<std::string> functionals;  // empty: subcommand default set
    } output;

    struct DiagnosticsSection {
        double boundary_threshold = 1e-8;
        double identity_tol = 1e-6;
        double saturation_threshold = 0.05;
        bool clip_at_wraparound = true;
        double clip_energy_floor = 1e-8;
        double clip_amplitude_floor = 1e-3;
    } diagnostics;

    double t_start = 2.0;
    double t_final = 20.0;

    void validate() const;

    Grid make_grid() const;
    Nonlinearity make_nonlinearity() const;
    StepperConfig make_stepper_config() const;
    ScalingLaw make_scaling_law() const;
    /// Initial state at t_start (soliton kind ignores amplitude/seed).
    State make_initial_state(const Grid& grid) const;

    nlohmann::ordered_json to_json() const;
    static ExperimentConfig from_json(const nlohmann::ordered_json& j);

    static ExperimentConfig load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;
};

}  // namespace bousq
