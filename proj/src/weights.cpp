#include "bousq/weights.hpp"

#include <cmath>

namespace bousq {

namespace {

void require_time(const ScalingLaw& law, double t) {
    if (law.kind == ScalingKind::Fixed) return;
    if (t < 2.0)
        throw std::invalid_argument("scaling law: t >= 2 required for log-based kinds");
    if (law.kind == ScalingKind::LogLog && std::log(std::log(t)) <= 0.0)
        throw std::invalid_argument("scaling law: loglog kind requires t > e");
}

}  // namespace

void ScalingLaw::validate() const {
    if (!(C > 0.0)) throw std::invalid_argument("scaling_law.C: must be positive");
    if (kind == ScalingKind::Fixed && !(lambda0 > 0.0))
        throw std::invalid_argument("scaling_law.lambda0: must be positive");
    if ((kind == ScalingKind::Log1PlusEps || kind == ScalingKind::LogLog) && !(eps > 0.0))
        throw std::invalid_argument("scaling_law.eps: must be positive");
}

double ScalingLaw::lambda(double t) const {
    require_time(*this, t);
    switch (kind) {
        case ScalingKind::Log2:
            return C * t / (std::log(t) * std::log(t));
        case ScalingKind::Log1PlusEps:
            return C * t / std::pow(std::log(t), 1.0 + eps);
        case ScalingKind::LogLog:
            return C * t / (std::log(t) * std::pow(std::log(std::log(t)), 1.0 + eps));
        case ScalingKind::Log1:
            return C * t / std::log(t);
        case ScalingKind::Fixed:
            return lambda0;
    }
    throw std::logic_error("unreachable");
}

double ScalingLaw::log_derivative(double t) const {
    require_time(*this, t);
    const double lt = std::log(t);
    switch (kind) {
        case ScalingKind::Log2:
            return (1.0 - 2.0 / lt) / t;
        case ScalingKind::Log1PlusEps:
            return (1.0 - (1.0 + eps) / lt) / t;
        case ScalingKind::LogLog:
            return (1.0 - 1.0 / lt - (1.0 + eps) / (lt * std::log(lt))) / t;
        case ScalingKind::Log1:
            return (1.0 - 1.0 / lt) / t;
        case ScalingKind::Fixed:
            return 0.0;
    }
    throw std::logic_error("unreachable");
}

ScalingKind scaling_kind_from_string(const std::string& s) {
    if (s == "log2") return ScalingKind::Log2;
    if (s == "log_1_plus_eps") return ScalingKind::Log1PlusEps;
    if (s == "loglog") return ScalingKind::LogLog;
    if (s == "log1") return ScalingKind::Log1;
    if (s == "fixed") return ScalingKind::Fixed;
    throw std::invalid_argument("scaling_law.kind: unknown kind '" + s + "'");
}

std::string to_string(ScalingKind k) {
    switch (k) {
        case ScalingKind::Log2: return "log2";
        case ScalingKind::Log1PlusEps: return "log_1_plus_eps";
        case ScalingKind::LogLog: return "loglog";
        case ScalingKind::Log1: return "log1";
        case ScalingKind::Fixed: return "fixed";
    }
    throw std::logic_error("unreachable");
}

namespace {

void require_order(int order) {
    if (order < 0 || order > 4)
        throw std::invalid_argument("weight_eval: derivative order must be in 0..4");
}

}  // namespace

double WeightFamily::psi(int order, double x) const {
    require_order(order);
    const double s = 1.0 / std::cosh(x);
    const double th = std::tanh(x);
    const double s2 = s * s;
    switch (order) {
        case 0: return th;
        case 1: return s2;
        case 2: return -2.0 * s2 * th;
        case 3: return 4.0 * s2 * th * th - 2.0 * s2 * s2;
        case 4: return -8.0 * s2 * th * th * th + 16.0 * s2 * s2 * th;
    }
    return 0.0;
}

double WeightFamily::phi0(int order, double x) const {
    require_order(order);
    if (order < 4) return psi(order + 1, x);
    const double s = 1.0 / std::cosh(x);
    const double th = std::tanh(x);
    const double s2 = s * s, s4 = s2 * s2, th2 = th * th;
    return 16.0 * s2 * th2 * th2 - 88.0 * s4 * th2 + 16.0 * s4 * s2;
}

double WeightFamily::phi1(int order, double x) const {
    require_order(order);
    const double s = 1.0 / std::cosh(x);
    const double th = std::tanh(x);
    const double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2, th2 = th * th;
    switch (order) {
        case 0: return s4;
        case 1: return -4.0 * s4 * th;
        case 2: return 16.0 * s4 * th2 - 4.0 * s6;
        case 3: return -64.0 * s4 * th2 * th + 56.0 * s6 * th;
        case 4: return 256.0 * s4 * th2 * th2 - 528.0 * s6 * th2 + 56.0 * s6 * s2;
    }
    return 0.0;
}

double WeightFamily::eval(Weight which, int order, double x) const {
    switch (which) {
        case Weight::Psi: return psi(order, x);
        case Weight::Phi0: return phi0(order, x);
        case Weight::Phi1: return phi1(order, x);
    }
    throw std::logic_error("unreachable");
}

double phi_spacetime(const WeightFamily& fam, const ScalingLaw& law, double t, double x,
                     int order_x) {
    require_order(order_x);
    const double lam = law.lambda(t);
    return fam.phi0(order_x, x / lam) / std::pow(lam, order_x + 1);
}

double phi_time_derivative(const WeightFamily& fam, const ScalingLaw& law, double t, double x) {
    const double lam = law.lambda(t);
    const double rate = law.log_derivative(t);
    const double y = x / lam;
    return -(rate / lam) * (fam.phi0(0, y) + y * fam.phi0(1, y));
}

double phi_time_derivative_dx(const WeightFamily& fam, const ScalingLaw& law, double t, double x) {
    const double lam = law.lambda(t);
    const double rate = law.log_derivative(t);
    const double y = x / lam;
    return -(rate / (lam * lam)) * (2.0 * fam.phi0(1, y) + y * fam.phi0(2, y));
}

}  // namespace bousq
