#pragma once

#include "bousq/dynamics.hpp"
#include "bousq/trajectory.hpp"

#include <complex>
#include <memory>
#include <span>

namespace bousq {

/// Raised when a step produces non-finite field values.
struct InstabilityError : std::runtime_error {
    explicit InstabilityError(double t)
        : std::runtime_error("instability detected at t=" + std::to_string(t)), time(t) {}
    double time;
};

enum class Scheme { Etdrk4, Rk4 };

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::Etdrk4;
    double dealias_rule = kDefaultDealiasRule;
    double cfl_safety = 0.8;  // rk4 only: dt <= cfl_safety * spacing / sqrt(1 + k_max^2)

    void validate(const Grid& grid) const;
};

/// Per-mode characteristic variables w± = u1_hat ± u2_hat / m(k),
/// m(k) = sqrt(1 + k^2). They diagonalize the linear flow: each mode of w±
/// rotates by exp(±i k m(k) t) (Nyquist frozen, matching the odd-derivative
/// convention of the discrete right-hand side).
struct CharacteristicPair {
    Spectrum w_plus;
    Spectrum w_minus;
};

CharacteristicPair to_characteristic(const Spectrum& u1_hat, const Spectrum& u2_hat,
                                     const Grid& grid);
void from_characteristic(const CharacteristicPair& w, const Grid& grid, Spectrum& u1_hat,
                         Spectrum& u2_hat);

/// phi-functions of exponential integrators, series fallback for small |z|.
std::complex<double> phi1(std::complex<double> z);
std::complex<double> phi2(std::complex<double> z);
std::complex<double> phi3(std::complex<double> z);

/// Time stepper for the first-order system. Exponential fourth-order scheme
/// (exact on the linear part) or classical RK4 for cross-validation.
class Stepper {
  public:
    Stepper(Grid grid, Nonlinearity nl, StepperConfig cfg);

    /// Advance one step of cfg.dt.
    State step(const State& state) const;

    /// Repeated stepping to t_final with the last step shortened exactly.
    /// Observers run on the initial state, at each cadence crossing, and on
    /// the final state (cadence <= 0: endpoints only).
    Trajectory evolve(const State& initial, double t_final,
                      std::span<const FunctionalObserver> observers, double cadence) const;

    const Grid& grid() const { return grid_; }
    const StepperConfig& config() const { return cfg_; }
    const Nonlinearity& nonlinearity() const { return nl_; }

  private:
    struct Tables;

    void advance(CharacteristicPair& w, const Tables& tables) const;
    void advance_rk4(CharacteristicPair& w, double h) const;
    Tables make_tables(double h) const;
    void nonlinear_term(const CharacteristicPair& w, Spectrum& n_plus, Spectrum& n_minus) const;

    Grid grid_;
    Nonlinearity nl_;
    StepperConfig cfg_;
    std::vector<double> symbol_;     // k m(k), Nyquist zeroed
    std::vector<double> injection_;  // k / m(k), Nyquist zeroed
    std::shared_ptr<const Tables> dt_tables_;
};

}  // namespace bousq
