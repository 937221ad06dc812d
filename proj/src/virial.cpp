#include "bousq/virial.hpp"

#include "bousq/fourier.hpp"

#include <cmath>

namespace bousq {

namespace {

FunctionalValue finish(std::string name, double time,
                       std::vector<std::pair<std::string, double>> terms) {
    FunctionalValue fv;
    fv.name = std::move(name);
    fv.time = time;
    fv.terms = std::move(terms);
    fv.value = fv.sum_of_terms();
    return fv;
}

}  // namespace

FunctionalValue J_eval(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                       const Grid& grid) {
    require_valid(s, grid);
    const double lam = law.lambda(s.time);
    RealField q(grid.n);
    for (int j = 0; j < grid.n; ++j)
        q[j] = fam.psi(0, grid.nodes[j] / lam) * s.u1[j] * s.u2[j];
    FunctionalValue fv;
    fv.name = "J";
    fv.time = s.time;
    fv.value = integrate(q, grid);
    return fv;
}

FunctionalValue J_rhs(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                      const Nonlinearity& nl, const Grid& grid) {
    require_valid(s, grid);
    const double t = s.time;
    const double lam = law.lambda(t);
    const double rate = law.log_derivative(t);
    RealField du1 = spectral_derivative(s.u1, grid, 1);

    RealField q_boost(grid.n), q_u2(grid.n), q_u1(grid.n), q_psi3(grid.n), q_grad(grid.n),
        q_nl(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double y = grid.nodes[j] / lam;
        const double psi1 = fam.psi(1, y);
        q_boost[j] = y * psi1 * s.u1[j] * s.u2[j];
        q_u2[j] = psi1 * s.u2[j] * s.u2[j];
        q_u1[j] = psi1 * s.u1[j] * s.u1[j];
        q_psi3[j] = fam.psi(3, y) * s.u1[j] * s.u1[j];
        q_grad[j] = psi1 * du1[j] * du1[j];
        q_nl[j] = psi1 * (s.u1[j] * nl.f(s.u1[j]) - nl.F(s.u1[j]));
    }
    return finish("J_rhs", t,
                  {{"boost", -rate * integrate(q_boost, grid)},
                   {"u2_sq", -0.5 / lam * integrate(q_u2, grid)},
                   {"u1_sq", -0.5 / lam * integrate(q_u1, grid)},
                   {"psi3", 0.5 / (lam * lam * lam) * integrate(q_psi3, grid)},
                   {"grad_sq", -1.5 / lam * integrate(q_grad, grid)},
                   {"nonlinear", 1.0 / lam * integrate(q_nl, grid)}});
}

FunctionalValue I_plus_eval(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                            const Grid& grid) {
    require_valid(s, grid);
    RealField du1 = spectral_derivative(s.u1, grid, 1);
    RealField q(grid.n);
    for (int j = 0; j < grid.n; ++j)
        q[j] = phi_spacetime(fam, law, s.time, grid.nodes[j], 0) * du1[j] * s.u2[j];
    FunctionalValue fv;
    fv.name = "I_plus";
    fv.time = s.time;
    fv.value = integrate(q, grid);
    return fv;
}

FunctionalValue I_minus_eval(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                             const Grid& grid) {
    require_valid(s, grid);
    RealField du1 = spectral_derivative(s.u1, grid, 1);
    RealField q(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.nodes[j];
        const double phi = phi_spacetime(fam, law, s.time, x, 0);
        const double dphi = phi_spacetime(fam, law, s.time, x, 1);
        q[j] = -(dphi * s.u1[j] + phi * du1[j]) * s.u2[j];
    }
    FunctionalValue fv;
    fv.name = "I_minus";
    fv.time = s.time;
    fv.value = integrate(q, grid);
    return fv;
}

FunctionalValue I_plus_rhs(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                           const Nonlinearity& nl, const Grid& grid) {
    require_valid(s, grid);
    const double t = s.time;
    RealField du1 = spectral_derivative(s.u1, grid, 1);
    RealField d2u1 = spectral_derivative(s.u1, grid, 2);
    RealField du2 = spectral_derivative(s.u2, grid, 1);

    RealField q_dt(grid.n), q_du2(grid.n), q_d2u1(grid.n), q_u2(grid.n), q_du1(grid.n),
        q_nl(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.nodes[j];
        const double phi = phi_spacetime(fam, law, t, x, 0);
        const double d2phi = phi_spacetime(fam, law, t, x, 2);
        const double dtphi = phi_time_derivative(fam, law, t, x);
        q_dt[j] = dtphi * du1[j] * s.u2[j];
        q_du2[j] = -phi * du2[j] * du2[j];
        q_d2u1[j] = phi * d2u1[j] * d2u1[j];
        q_u2[j] = 0.5 * d2phi * s.u2[j] * s.u2[j];
        q_du1[j] = (phi - 0.5 * d2phi) * du1[j] * du1[j];
        q_nl[j] = -phi * du1[j] * du1[j] * nl.f_prime(s.u1[j]);
    }
    return finish("I_plus_rhs", t,
                  {{"dt_weight", integrate(q_dt, grid)},
                   {"du2_sq", integrate(q_du2, grid)},
                   {"d2u1_sq", integrate(q_d2u1, grid)},
                   {"u2_sq", integrate(q_u2, grid)},
                   {"du1_sq", integrate(q_du1, grid)},
                   {"nonlinear", integrate(q_nl, grid)}});
}

// Sign structure: with a constant weight, I+ + I- == 0 identically, so these
// terms must cancel those of I_plus_rhs term by term; in particular the
// (dxx u1)^2 and (dx u2)^2 densities enter I+ and I- with opposite signs.
FunctionalValue I_minus_rhs(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                            const Nonlinearity& nl, const Grid& grid) {
    require_valid(s, grid);
    const double t = s.time;
    RealField du1 = spectral_derivative(s.u1, grid, 1);
    RealField d2u1 = spectral_derivative(s.u1, grid, 2);
    RealField du2 = spectral_derivative(s.u2, grid, 1);

    RealField q_dt(grid.n), q_du2(grid.n), q_d2u1(grid.n), q_du1(grid.n), q_u1(grid.n),
        q_nlg(grid.n), q_nl(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.nodes[j];
        const double phi = phi_spacetime(fam, law, t, x, 0);
        const double dphi = phi_spacetime(fam, law, t, x, 1);
        const double d2phi = phi_spacetime(fam, law, t, x, 2);
        const double d4phi = phi_spacetime(fam, law, t, x, 4);
        const double dtphi = phi_time_derivative(fam, law, t, x);
        const double dtphi_dx = phi_time_derivative_dx(fam, law, t, x);
        const double fp = nl.f_prime(s.u1[j]);
        q_dt[j] = -(dtphi_dx * s.u1[j] + dtphi * du1[j]) * s.u2[j];
        q_du2[j] = phi * du2[j] * du2[j];
        q_d2u1[j] = -phi * d2u1[j] * d2u1[j];
        q_du1[j] = -(phi - 2.0 * d2phi) * du1[j] * du1[j];
        q_u1[j] = 0.5 * (d2phi - d4phi) * s.u1[j] * s.u1[j];
        q_nlg[j] = dphi * s.u1[j] * du1[j] * fp;
        q_nl[j] = phi * fp * du1[j] * du1[j];
    }
    return finish("I_minus_rhs", t,
                  {{"dt_weight", integrate(q_dt, grid)},
                   {"du2_sq", integrate(q_du2, grid)},
                   {"d2u1_sq", integrate(q_d2u1, grid)},
                   {"du1_sq", integrate(q_du1, grid)},
                   {"u1_sq", integrate(q_u1, grid)},
                   {"nl_gradient", integrate(q_nlg, grid)},
                   {"nonlinear", integrate(q_nl, grid)}});
}

FunctionalValue E_phi1_eval(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                            const Nonlinearity& nl, const Grid& grid) {
    require_valid(s, grid);
    const double lam = law.lambda(s.time);
    RealField du1 = spectral_derivative(s.u1, grid, 1);
    RealField q_grad(grid.n), q_u1(grid.n), q_u2(grid.n), q_pot(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double w = fam.phi1(0, grid.nodes[j] / lam);
        q_grad[j] = 0.5 * w * du1[j] * du1[j];
        q_u1[j] = 0.5 * w * s.u1[j] * s.u1[j];
        q_u2[j] = 0.5 * w * s.u2[j] * s.u2[j];
        q_pot[j] = -w * nl.F(s.u1[j]);
    }
    return finish("E_phi1", s.time,
                  {{"grad_sq", integrate(q_grad, grid)},
                   {"u1_sq", integrate(q_u1, grid)},
                   {"u2_sq", integrate(q_u2, grid)},
                   {"potential", integrate(q_pot, grid)}});
}

FunctionalValue E_phi1_rhs(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                           const Nonlinearity& nl, const Grid& grid) {
    require_valid(s, grid);
    const double t = s.time;
    const double lam = law.lambda(t);
    const double rate = law.log_derivative(t);
    RealField du1 = spectral_derivative(s.u1, grid, 1);
    RealField d2u1 = spectral_derivative(s.u1, grid, 2);

    RealField q_dt(grid.n), q_ud2(grid.n), q_du1u2(grid.n), q_u1u2(grid.n), q_nl(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double y = grid.nodes[j] / lam;
        const double w1 = fam.phi1(1, y);
        const double w2 = fam.phi1(2, y);
        const double density = du1[j] * du1[j] + s.u1[j] * s.u1[j] + s.u2[j] * s.u2[j] -
                               2.0 * nl.F(s.u1[j]);
        q_dt[j] = -0.5 * rate * y * w1 * density;
        q_ud2[j] = w1 * s.u2[j] * d2u1[j];
        q_du1u2[j] = w2 * du1[j] * s.u2[j];
        q_u1u2[j] = w1 * s.u1[j] * s.u2[j];
        q_nl[j] = w1 * s.u2[j] * nl.f(s.u1[j]);
    }
    return finish("E_phi1_rhs", t,
                  {{"dt_weight", integrate(q_dt, grid)},
                   {"u2_d2u1", 2.0 / lam * integrate(q_ud2, grid)},
                   {"du1_u2", 1.0 / (lam * lam) * integrate(q_du1u2, grid)},
                   {"u1_u2", -1.0 / lam * integrate(q_u1u2, grid)},
                   {"nonlinear", 1.0 / lam * integrate(q_nl, grid)}});
}

FunctionalValue weighted_norm(const State& s, WeightedNormKind kind, const ScalingLaw& law,
                              double lambda0, const Grid& grid) {
    require_valid(s, grid);
    WeightFamily fam;
    double scale = 0.0;
    int power = 0;
    std::string name;
    switch (kind) {
        case WeightedNormKind::Phi0Scaled:
            scale = law.lambda(s.time);
            power = 0;
            name = "weighted_phi0_scaled";
            break;
        case WeightedNormKind::Phi0Fixed:
            if (!(lambda0 > 0.0))
                throw std::invalid_argument("weighted_norm: lambda0 must be positive");
            scale = lambda0;
            power = 0;
            name = "weighted_phi0_fixed";
            break;
        case WeightedNormKind::Phi1Scaled:
            scale = law.lambda(s.time);
            power = 1;
            name = "weighted_phi1_scaled";
            break;
    }
    RealField du1 = spectral_derivative(s.u1, grid, 1);
    RealField q_grad(grid.n), q_u1(grid.n), q_u2(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double y = grid.nodes[j] / scale;
        const double w = power == 0 ? fam.phi0(0, y) : fam.phi1(0, y);
        q_grad[j] = w * du1[j] * du1[j];
        q_u1[j] = w * s.u1[j] * s.u1[j];
        q_u2[j] = w * s.u2[j] * s.u2[j];
    }
    return finish(std::move(name), s.time,
                  {{"grad_sq", integrate(q_grad, grid)},
                   {"u1_sq", integrate(q_u1, grid)},
                   {"u2_sq", integrate(q_u2, grid)}});
}

double restricted_norm_sq(const State& s, double radius, const Grid& grid) {
    require_valid(s, grid);
    if (!(radius > 0.0)) throw std::invalid_argument("restricted_norm_sq: radius must be positive");
    RealField du1 = spectral_derivative(s.u1, grid, 1);
    RealField q(grid.n, 0.0);
    for (int j = 0; j < grid.n; ++j) {
        if (std::abs(grid.nodes[j]) < radius)
            q[j] = du1[j] * du1[j] + s.u1[j] * s.u1[j] + s.u2[j] * s.u2[j];
    }
    return integrate(q, grid);
}

double cone_factor() {
    static const double c = std::pow(std::cosh(1.0), 4);
    return c;
}

FunctionalValue smoothing_density(const State& s, const WeightFamily& fam, const ScalingLaw& law,
                                  const Grid& grid) {
    require_valid(s, grid);
    const double lam = law.lambda(s.time);
    RealField d2u1 = spectral_derivative(s.u1, grid, 2);
    RealField du2 = spectral_derivative(s.u2, grid, 1);
    RealField q_d2u1(grid.n), q_du2(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double w = fam.phi0(0, grid.nodes[j] / lam);
        q_d2u1[j] = w * d2u1[j] * d2u1[j];
        q_du2[j] = w * du2[j] * du2[j];
    }
    return finish("smoothing", s.time,
                  {{"d2u1_sq", integrate(q_d2u1, grid)}, {"du2_sq", integrate(q_du2, grid)}});
}

}  // namespace bousq
