#include "bousq/config.hpp"

#include <fstream>

namespace bousq {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& j, const std::string& section,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw std::invalid_argument(section + ": expected a JSON object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw std::invalid_argument(section + ": unknown field '" + key + "'");
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void ExperimentConfig::validate() const {
    const Grid g = make_grid();
    (void)make_nonlinearity();
    make_stepper_config().validate(g);
    const ScalingLaw law = make_scaling_law();
    law.validate();
    if (initial_data.kind != "soliton") (void)small_data_kind_from_string(initial_data.kind);
    if (initial_data.amplitude < 0.0)
        throw std::invalid_argument("initial_data.amplitude: must be non-negative");
    if (!(t_final >= t_start)) throw std::invalid_argument("t_final: must not precede t_start");
    if (law.kind != ScalingKind::Fixed && t_start < 2.0)
        throw std::invalid_argument("t_start: log-based scaling laws require t_start >= 2");
    if (!(output.cadence > 0.0)) throw std::invalid_argument("output.cadence: must be positive");
    if (output.directory.empty())
        throw std::invalid_argument("output.directory: must be non-empty");
    if (!(diagnostics.boundary_threshold > 0.0))
        throw std::invalid_argument("diagnostics.boundary_threshold: must be positive");
    if (!(diagnostics.identity_tol > 0.0))
        throw std::invalid_argument("diagnostics.identity_tol: must be positive");
    if (!(diagnostics.saturation_threshold > 0.0))
        throw std::invalid_argument("diagnostics.saturation_threshold: must be positive");
    if (!(diagnostics.clip_energy_floor > 0.0) || diagnostics.clip_energy_floor > 1.0)
        throw std::invalid_argument("diagnostics.clip_energy_floor: must lie in (0, 1]");
    if (!(diagnostics.clip_amplitude_floor > 0.0) || diagnostics.clip_amplitude_floor > 1.0)
        throw std::invalid_argument("diagnostics.clip_amplitude_floor: must lie in (0, 1]");
}

Grid ExperimentConfig::make_grid() const { return Grid::make(grid.n, grid.half_length); }

Nonlinearity ExperimentConfig::make_nonlinearity() const {
    if (nonlinearity.variant == "signed_power") return Nonlinearity::signed_power(nonlinearity.p);
    if (nonlinearity.variant == "pure_power") return Nonlinearity::pure_power(nonlinearity.p);
    if (nonlinearity.variant == "disabled") return Nonlinearity::disabled();
    throw std::invalid_argument("nonlinearity.variant: unknown variant '" + nonlinearity.variant +
                                "'");
}

StepperConfig ExperimentConfig::make_stepper_config() const {
    StepperConfig cfg;
    cfg.dt = stepper.dt;
    cfg.scheme = scheme_from_string(stepper.scheme);
    cfg.dealias_rule = stepper.dealias_rule;
    cfg.cfl_safety = stepper.cfl_safety;
    return cfg;
}

ScalingLaw ExperimentConfig::make_scaling_law() const {
    ScalingLaw law;
    law.kind = scaling_kind_from_string(scaling_law.kind);
    law.C = scaling_law.C;
    law.eps = scaling_law.eps;
    law.lambda0 = scaling_law.lambda0;
    return law;
}

State ExperimentConfig::make_initial_state(const Grid& g) const {
    State s;
    if (initial_data.kind == "soliton") {
        SolitonParams params{initial_data.soliton.p, initial_data.soliton.v,
                             initial_data.soliton.x0};
        s = boosted_soliton(params, g, diagnostics.boundary_threshold);
    } else {
        s = small_data(small_data_kind_from_string(initial_data.kind), initial_data.amplitude,
                       initial_data.seed, g, diagnostics.boundary_threshold);
    }
    s.time = t_start;
    return s;
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
    json j;
    j["grid"] = {{"n", grid.n}, {"half_length", grid.half_length}};
    j["nonlinearity"] = {{"variant", nonlinearity.variant}, {"p", nonlinearity.p}};
    j["stepper"] = {{"scheme", stepper.scheme},
                    {"dt", stepper.dt},
                    {"dealias_rule", stepper.dealias_rule},
                    {"cfl_safety", stepper.cfl_safety}};
    j["initial_data"] = {{"kind", initial_data.kind},
                         {"amplitude", initial_data.amplitude},
                         {"seed", initial_data.seed},
                         {"soliton",
                          {{"p", initial_data.soliton.p},
                           {"v", initial_data.soliton.v},
                           {"x0", initial_data.soliton.x0}}}};
    j["scaling_law"] = {{"kind", scaling_law.kind},
                        {"C", scaling_law.C},
                        {"eps", scaling_law.eps},
                        {"lambda0", scaling_law.lambda0}};
    j["output"] = {{"cadence", output.cadence},
                   {"directory", output.directory},
                   {"functionals", output.functionals}};
    j["diagnostics"] = {{"boundary_threshold", diagnostics.boundary_threshold},
                        {"identity_tol", diagnostics.identity_tol},
                        {"saturation_threshold", diagnostics.saturation_threshold},
                        {"clip_at_wraparound", diagnostics.clip_at_wraparound},
                        {"clip_energy_floor", diagnostics.clip_energy_floor},
                        {"clip_amplitude_floor", diagnostics.clip_amplitude_floor}};
    j["t_start"] = t_start;
    j["t_final"] = t_final;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::ordered_json& j) {
    check_keys(j, "config",
               {"grid", "nonlinearity", "stepper", "initial_data", "scaling_law", "output",
                "diagnostics", "t_start", "t_final"});
    ExperimentConfig c;
    if (j.contains("grid")) {
        const auto& s = j.at("grid");
        check_keys(s, "grid", {"n", "half_length"});
        read(s, "n", c.grid.n);
        read(s, "half_length", c.grid.half_length);
    }
    if (j.contains("nonlinearity")) {
        const auto& s = j.at("nonlinearity");
        check_keys(s, "nonlinearity", {"variant", "p"});
        read(s, "variant", c.nonlinearity.variant);
        read(s, "p", c.nonlinearity.p);
    }
    if (j.contains("stepper")) {
        const auto& s = j.at("stepper");
        check_keys(s, "stepper", {"scheme", "dt", "dealias_rule", "cfl_safety"});
        read(s, "scheme", c.stepper.scheme);
        read(s, "dt", c.stepper.dt);
        read(s, "dealias_rule", c.stepper.dealias_rule);
        read(s, "cfl_safety", c.stepper.cfl_safety);
    }
    if (j.contains("initial_data")) {
        const auto& s = j.at("initial_data");
        check_keys(s, "initial_data", {"kind", "amplitude", "seed", "soliton"});
        read(s, "kind", c.initial_data.kind);
        read(s, "amplitude", c.initial_data.amplitude);
        read(s, "seed", c.initial_data.seed);
        if (s.contains("soliton")) {
            const auto& q = s.at("soliton");
            check_keys(q, "initial_data.soliton", {"p", "v", "x0"});
            read(q, "p", c.initial_data.soliton.p);
            read(q, "v", c.initial_data.soliton.v);
            read(q, "x0", c.initial_data.soliton.x0);
        }
    }
    if (j.contains("scaling_law")) {
        const auto& s = j.at("scaling_law");
        check_keys(s, "scaling_law", {"kind", "C", "eps", "lambda0"});
        read(s, "kind", c.scaling_law.kind);
        read(s, "C", c.scaling_law.C);
        read(s, "eps", c.scaling_law.eps);
        read(s, "lambda0", c.scaling_law.lambda0);
    }
    if (j.contains("output")) {
        const auto& s = j.at("output");
        check_keys(s, "output", {"cadence", "directory", "functionals"});
        read(s, "cadence", c.output.cadence);
        read(s, "directory", c.output.directory);
        read(s, "functionals", c.output.functionals);
    }
    if (j.contains("diagnostics")) {
        const auto& s = j.at("diagnostics");
        check_keys(s, "diagnostics",
                   {"boundary_threshold", "identity_tol", "saturation_threshold",
                    "clip_at_wraparound", "clip_energy_floor", "clip_amplitude_floor"});
        read(s, "boundary_threshold", c.diagnostics.boundary_threshold);
        read(s, "identity_tol", c.diagnostics.identity_tol);
        read(s, "saturation_threshold", c.diagnostics.saturation_threshold);
        read(s, "clip_at_wraparound", c.diagnostics.clip_at_wraparound);
        read(s, "clip_energy_floor", c.diagnostics.clip_energy_floor);
        read(s, "clip_amplitude_floor", c.diagnostics.clip_amplitude_floor);
    }
    read(j, "t_start", c.t_start);
    read(j, "t_final", c.t_final);
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("config: cannot open '" + file.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: JSON parse error in '" + file.string() +
                                    "': " + e.what());
    }
    return from_json(j);
}

void ExperimentConfig::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("config: cannot write '" + file.string() + "'");
    out << to_json().dump(2) << "\n";
}

}  // namespace bousq
