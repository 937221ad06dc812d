#pragma once

#include <stdexcept>
#include <string>

namespace bousq {

/// Time-dependent dilation lambda(t) of the localization weights.
///
/// The non-fixed laws are defined for t >= 2 only; the loglog variant
/// additionally needs log(log t) > 0, i.e. t > e.
enum class ScalingKind { Log2, Log1PlusEps, LogLog, Log1, Fixed };

struct ScalingLaw {
    ScalingKind kind = ScalingKind::Log2;
    double C = 1.0;
    double eps = 0.1;      // variant kinds only
    double lambda0 = 10.0; // fixed kind only

    double lambda(double t) const;
    /// lambda'(t)/lambda(t) in closed form (0 for the fixed kind).
    double log_derivative(double t) const;

    void validate() const;
};

ScalingKind scaling_kind_from_string(const std::string& s);
std::string to_string(ScalingKind k);

enum class Weight { Psi, Phi0, Phi1 };

/// The weight triple psi = tanh, phi0 = sech^2, phi1 = sech^4 with exact
/// derivatives up to order 4 (hyperbolic identities, no differencing).
struct WeightFamily {
    double psi(int order, double x) const;
    double phi0(int order, double x) const;
    double phi1(int order, double x) const;
    double eval(Weight which, int order, double x) const;
};

/// sup_s |s * phi0'(s)| = 2 * sup_s |s sech^2(s) tanh(s)|, and
/// sup_s s^2 sech^2(s); both verified by fine-grid maximization in tests.
inline constexpr double kSupAbsSPhi0Prime = 0.63978610582616058;
inline constexpr double kSupSSqSech2 = 0.43922883989064521;

/// Space-time weight phi(t,x) = phi0(x/lambda(t)) / lambda(t) and its
/// derivatives. order_x in 0..4.
double phi_spacetime(const WeightFamily& fam, const ScalingLaw& law, double t, double x,
                     int order_x);

/// d/dt phi(t,x) = -(lambda'/lambda) phi - (lambda'/lambda^2) y phi0'(y), y = x/lambda.
double phi_time_derivative(const WeightFamily& fam, const ScalingLaw& law, double t, double x);

/// d/dx of phi_time_derivative: -(lambda'/lambda^3) (2 phi0'(y) + y phi0''(y)).
double phi_time_derivative_dx(const WeightFamily& fam, const ScalingLaw& law, double t, double x);

}  // namespace bousq
