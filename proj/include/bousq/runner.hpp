#pragma once

#include "bousq/config.hpp"
#include "bousq/trajectory.hpp"
#include "bousq/virial.hpp"

#include <filesystem>
#include <optional>

namespace bousq {

/// Common per-run bookkeeping written to summary.json.
struct RunSummary {
    double energy_initial = 0.0;
    double energy_final = 0.0;
    double energy_drift_rel = 0.0;  // max over samples
    double boundary_max = 0.0;
    std::optional<double> first_boundary_violation;
    double wall_time_s = 0.0;
};

struct SimulateResult {
    Trajectory trajectory;
    RunSummary summary;
};

struct IdentityReport {
    std::string name;
    double delta = 0.0;         // F(t_final) - F(t_start)
    double integral_rhs = 0.0;  // time integral of the analytic derivative
    double residual = 0.0;      // |delta - integral_rhs|
    double sup_rhs = 0.0;
    double normalized = 0.0;    // residual / ((t_final - t_start) max(1, sup_rhs))
    bool pass = false;
};

/// Test hook: flip the sign of one named rhs term to verify the check trips.
struct VirialHook {
    std::string functional;
    std::string term;
};

struct VirialCheckResult {
    Trajectory trajectory;
    RunSummary summary;
    std::vector<IdentityReport> identities;
    bool all_pass = false;
};

struct CumulativeTrend {
    std::string name;
    double total = 0.0;
    double last_quarter_growth = 0.0;  // relative growth over the final quarter
    bool saturated = false;
};

struct DecayReport {
    Trajectory trajectory;
    RunSummary summary;
    double wraparound_time = 0.0;  // +inf when clipping is off or data is empty
    double analysis_end = 0.0;     // min(t_final, wraparound_time)
    double restricted_first_quarter_min = 0.0;
    double restricted_last_quarter_max = 0.0;
    bool restricted_decays = false;
    std::vector<CumulativeTrend> cumulatives;
    bool all_pass = false;
};

struct SolitonReport {
    Trajectory trajectory;
    RunSummary summary;
    double traveling_residual = 0.0;  // L_inf of rhs + v dx(state) at t_start
    double amplitude = 0.0;           // u1 at the node nearest x0
    double amplitude_expected = 0.0;
    double translation_error = 0.0;   // L_inf evolved vs translated profile at t_final
};

SimulateResult run_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

VirialCheckResult run_virial_check(const ExperimentConfig& cfg,
                                   const std::filesystem::path& out_dir,
                                   const std::optional<VirialHook>& hook = std::nullopt);

DecayReport run_decay_report(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

SolitonReport run_soliton(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Fourth-order quadrature of a sampled series (cubic through neighboring
/// samples on each interval).
double integrate_series(const std::vector<double>& times, const std::vector<double>& values);

/// Group speed of the linearized system, d/dk [k sqrt(1+k^2)].
double group_speed(double k);

/// First time the leading edge of the data could reach the boundary and
/// travel back into the observation region (distance ~2L). The edge speed is
/// the group speed of the fastest mode holding at least energy_floor of the
/// peak modal energy; the edge position is the outermost node above
/// amplitude_floor of the peak amplitude.
double wraparound_time(const State& initial, const Grid& grid, double energy_floor,
                       double amplitude_floor);

}  // namespace bousq
