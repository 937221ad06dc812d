#include "bousq/runner.hpp"

#include "bousq/csv.hpp"
#include "support.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace bousq;

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("bousq_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// a cheap, fast configuration for smoke tests
ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.grid.n = 128;
    cfg.grid.half_length = 20.0;
    cfg.initial_data.kind = "gaussian";
    cfg.initial_data.amplitude = 0.01;
    cfg.stepper.dt = 1e-3;
    cfg.output.cadence = 0.05;
    cfg.t_start = 2.0;
    cfg.t_final = 2.2;
    return cfg;
}

}  // namespace

TEST_CASE("config: JSON round trip is lossless") {
    ExperimentConfig cfg = small_config();
    cfg.scaling_law.kind = "log_1_plus_eps";
    cfg.scaling_law.eps = 0.37;
    cfg.initial_data.seed = 99;
    cfg.output.functionals = {"J", "energy"};

    const auto j = cfg.to_json();
    const auto back = ExperimentConfig::from_json(j);
    CHECK(back.to_json().dump() == j.dump());

    auto dir = temp_dir("roundtrip");
    cfg.save(dir / "cfg.json");
    const auto loaded = ExperimentConfig::load(dir / "cfg.json");
    CHECK(loaded.to_json().dump() == j.dump());
}

TEST_CASE("config: an empty JSON object yields the defaults") {
    const auto from_empty = ExperimentConfig::from_json(nlohmann::ordered_json::object());
    CHECK(from_empty.to_json().dump() == ExperimentConfig{}.to_json().dump());
}

TEST_CASE("run_simulate: unknown functional names are rejected by field") {
    ExperimentConfig cfg = small_config();
    cfg.output.functionals = {"no_such_functional"};
    try {
        run_simulate(cfg, temp_dir("bad_functional"));
        FAIL_CHECK("expected a validation failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("output.functionals") != std::string::npos);
    }
}

TEST_CASE("config: validation names the offending field") {
    auto expect_message = [](ExperimentConfig cfg, const std::string& needle) {
        try {
            cfg.validate();
            FAIL_CHECK("expected validation failure mentioning " << needle);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    ExperimentConfig cfg = small_config();

    cfg.grid.n = 127;
    expect_message(cfg, "grid.n");
    cfg = small_config();
    cfg.stepper.dt = 0.0;
    expect_message(cfg, "stepper.dt");
    cfg = small_config();
    cfg.stepper.dealias_rule = 1.2;
    expect_message(cfg, "stepper.dealias_rule");
    cfg = small_config();
    cfg.nonlinearity.p = 1.0;
    expect_message(cfg, "nonlinearity.p");
    cfg = small_config();
    cfg.t_final = 1.0;
    expect_message(cfg, "t_final");
    cfg = small_config();
    cfg.t_start = 0.0;  // log2 law needs t >= 2
    expect_message(cfg, "t_start");
    cfg = small_config();
    cfg.scaling_law.kind = "nope";
    expect_message(cfg, "scaling_law.kind");
    cfg = small_config();
    cfg.stepper.scheme = "rk4";
    cfg.stepper.dt = 5e-2;
    expect_message(cfg, "stepper.dt");

    nlohmann::ordered_json j = small_config().to_json();
    j["grid"]["typo"] = 1;
    CHECK_THROWS_WITH_AS(ExperimentConfig::from_json(j), doctest::Contains("typo"),
                         std::invalid_argument);
}

TEST_CASE("run_simulate: zero-length run emits the initial record only") {
    ExperimentConfig cfg = small_config();
    cfg.t_final = cfg.t_start;
    auto dir = temp_dir("sim_zero");
    auto result = run_simulate(cfg, dir);
    CHECK(result.trajectory.times.size() == 1);
    const std::string csv = slurp(dir / "energy.csv");
    CHECK(csv.substr(0, 10) == "time,value");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + one record
}

TEST_CASE("run_simulate: deterministic byte-identical CSV output") {
    ExperimentConfig cfg = small_config();
    cfg.initial_data.kind = "filtered_random";
    cfg.output.functionals = {"J", "weighted_phi0_scaled"};
    auto dir_a = temp_dir("sim_a");
    auto dir_b = temp_dir("sim_b");
    run_simulate(cfg, dir_a);
    run_simulate(cfg, dir_b);
    for (const char* name : {"energy.csv", "boundary.csv", "J.csv", "weighted_phi0_scaled.csv"})
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));

    // strictly increasing times, no duplicates
    std::istringstream in(slurp(dir_a / "energy.csv"));
    std::string line;
    std::getline(in, line);
    double prev = -1e300;
    while (std::getline(in, line)) {
        const double t = std::stod(line.substr(0, line.find(',')));
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("run_simulate: summary records energy drift and boundary state") {
    ExperimentConfig cfg = small_config();
    auto dir = temp_dir("sim_summary");
    auto result = run_simulate(cfg, dir);
    CHECK(result.summary.energy_drift_rel < 1e-9);
    CHECK(result.summary.boundary_max <= cfg.diagnostics.boundary_threshold);
    CHECK_FALSE(result.summary.first_boundary_violation.has_value());
    const std::string summary = slurp(dir / "summary.json");
    CHECK(summary.find("\"drift_rel\"") != std::string::npos);
    CHECK(summary.find("\"wall_time_s\"") != std::string::npos);
}

TEST_CASE("run_virial_check: zero data passes trivially") {
    ExperimentConfig cfg = small_config();
    cfg.initial_data.amplitude = 0.0;
    auto dir = temp_dir("virial_zero");
    auto result = run_virial_check(cfg, dir);
    CHECK(result.all_pass);
    for (const auto& rep : result.identities) {
        CHECK(rep.residual == 0.0);
        CHECK(rep.pass);
    }
}

TEST_CASE("run_virial_check: small data passes, corrupted term fails by name") {
    ExperimentConfig cfg = small_config();
    cfg.initial_data.kind = "filtered_random";
    cfg.t_final = 2.5;
    cfg.output.cadence = 0.02;
    auto dir = temp_dir("virial_ok");
    auto ok = run_virial_check(cfg, dir);
    CHECK(ok.all_pass);

    auto dir2 = temp_dir("virial_bad");
    auto bad = run_virial_check(cfg, dir2, VirialHook{"J", "u2_sq"});
    CHECK_FALSE(bad.all_pass);
    for (const auto& rep : bad.identities) {
        if (rep.name == "J")
            CHECK_FALSE(rep.pass);
        else
            CHECK(rep.pass);
    }
    const std::string summary = slurp(dir2 / "summary.json");
    CHECK(summary.find("\"all_pass\": false") != std::string::npos);

    CHECK_THROWS_AS(run_virial_check(cfg, dir2, VirialHook{"J", "no_such_term"}),
                    std::out_of_range);
    CHECK_THROWS_AS(run_virial_check(cfg, dir2, VirialHook{"nope", "u2_sq"}),
                    std::invalid_argument);
}

TEST_CASE("run_decay_report: zero data gives all-zero series and trivial pass") {
    ExperimentConfig cfg = small_config();
    cfg.initial_data.amplitude = 0.0;
    cfg.t_final = 2.4;
    auto dir = temp_dir("decay_zero");
    auto report = run_decay_report(cfg, dir);
    CHECK(report.all_pass);
    CHECK(std::isinf(report.wraparound_time));
    for (const auto& fv : report.trajectory.series_for("weighted_phi0_scaled"))
        CHECK(fv.value == 0.0);
    for (const auto& t : report.cumulatives) {
        CHECK(t.total == 0.0);
        CHECK(t.saturated);
    }
}

TEST_CASE("run_decay_report: smoke run writes series and cumulative files") {
    ExperimentConfig cfg = small_config();
    cfg.t_final = 2.4;
    auto dir = temp_dir("decay_smoke");
    auto report = run_decay_report(cfg, dir);
    CHECK(std::isfinite(report.wraparound_time));
    CHECK(report.wraparound_time > cfg.t_start);
    CHECK(std::filesystem::exists(dir / "cumulative.csv"));
    CHECK(std::filesystem::exists(dir / "restricted_norm.csv"));
    CHECK(std::filesystem::exists(dir / "summary.json"));
    CHECK(report.analysis_end <= cfg.t_final + 1e-12);
}

TEST_CASE("run_soliton: residuals, amplitude, and translation at small scale") {
    ExperimentConfig cfg;
    cfg.grid.n = 512;
    cfg.grid.half_length = 50.0;
    cfg.initial_data.kind = "soliton";
    cfg.initial_data.soliton = {2.0, 0.3, 0.0};
    cfg.scaling_law.kind = "fixed";
    cfg.t_start = 0.0;
    cfg.t_final = 0.5;
    cfg.stepper.dt = 1e-3;
    cfg.output.cadence = 0.1;
    auto dir = temp_dir("soliton");
    auto report = run_soliton(cfg, dir);
    CHECK(report.traveling_residual < 1e-8);
    CHECK(report.amplitude == doctest::Approx(report.amplitude_expected).epsilon(1e-12));
    CHECK(report.translation_error < 1e-7);
    CHECK(std::filesystem::exists(dir / "state_final.csv"));

    cfg.initial_data.kind = "gaussian";
    CHECK_THROWS_AS(run_soliton(cfg, dir), std::invalid_argument);
    cfg.initial_data.kind = "soliton";
    cfg.nonlinearity.p = 3.0;
    CHECK_THROWS_AS(run_soliton(cfg, dir), std::invalid_argument);
}

TEST_CASE("integrate_series: fourth-order accuracy on sampled data") {
    auto sample = [](int n) {
        std::vector<double> t(n), v(n);
        for (int i = 0; i < n; ++i) {
            t[i] = 2.0 * i / (n - 1);
            v[i] = std::sin(t[i]);
        }
        return std::make_pair(t, v);
    };
    const double exact = 1.0 - std::cos(2.0);
    auto [t1, v1] = sample(21);
    auto [t2, v2] = sample(41);
    const double e1 = std::abs(integrate_series(t1, v1) - exact);
    const double e2 = std::abs(integrate_series(t2, v2) - exact);
    CHECK(e1 < 5e-6);
    CHECK(e1 / e2 > 10.0);  // roughly 16x per halving

    std::vector<double> single{1.0}, sv{3.0};
    CHECK(integrate_series(single, sv) == 0.0);
}

TEST_CASE("wraparound_time: localized data gives a finite, sensible horizon") {
    Grid g = Grid::make(512, 50.0);
    State s = small_data(SmallDataKind::SechPacket, 0.01, 1, g);
    s.time = 2.0;
    const double t_wrap = wraparound_time(s, g, 1e-8, 1e-3);
    CHECK(t_wrap > 3.0);
    CHECK(t_wrap < 60.0);

    State z{RealField(g.n, 0.0), RealField(g.n, 0.0), 2.0};
    CHECK(std::isinf(wraparound_time(z, g, 1e-8, 1e-3)));
}
