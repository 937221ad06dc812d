#include "bousq/nonlinearity.hpp"

#include <cmath>

namespace bousq {

namespace {

// Exact integer power by repeated multiplication.
double ipow(double u, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= u;
    return r;
}

}  // namespace

Nonlinearity Nonlinearity::signed_power(double p) {
    if (!(p > 1.0))
        throw std::invalid_argument("nonlinearity.p: must exceed 1");
    return Nonlinearity(Kind::SignedPower, p);
}

Nonlinearity Nonlinearity::pure_power(double p) {
    if (!(p > 1.0))
        throw std::invalid_argument("nonlinearity.p: must exceed 1");
    if (p != std::floor(p))
        throw std::invalid_argument("nonlinearity.p: pure_power requires an integer exponent");
    return Nonlinearity(Kind::PurePower, p);
}

Nonlinearity Nonlinearity::disabled() { return Nonlinearity(Kind::Disabled, 0.0); }

double Nonlinearity::f(double u) const {
    switch (kind_) {
        case Kind::SignedPower:
            return u == 0.0 ? 0.0 : std::pow(std::abs(u), p_ - 1.0) * u;
        case Kind::PurePower:
            return ipow(u, static_cast<int>(p_));
        case Kind::Disabled:
            return 0.0;
    }
    return 0.0;
}

double Nonlinearity::f_prime(double u) const {
    switch (kind_) {
        case Kind::SignedPower:
            // f'(0) := 0 for 1 < p < 2 (pointwise limit).
            return u == 0.0 ? 0.0 : p_ * std::pow(std::abs(u), p_ - 1.0);
        case Kind::PurePower:
            return p_ * ipow(u, static_cast<int>(p_) - 1);
        case Kind::Disabled:
            return 0.0;
    }
    return 0.0;
}

double Nonlinearity::F(double u) const {
    switch (kind_) {
        case Kind::SignedPower:
            return std::pow(std::abs(u), p_ + 1.0) / (p_ + 1.0);
        case Kind::PurePower:
            return ipow(u, static_cast<int>(p_) + 1) / (p_ + 1.0);
        case Kind::Disabled:
            return 0.0;
    }
    return 0.0;
}

RealField Nonlinearity::f(const RealField& u) const {
    RealField out(u.size());
    for (size_t j = 0; j < u.size(); ++j) out[j] = f(u[j]);
    return out;
}

RealField Nonlinearity::f_prime(const RealField& u) const {
    RealField out(u.size());
    for (size_t j = 0; j < u.size(); ++j) out[j] = f_prime(u[j]);
    return out;
}

RealField Nonlinearity::F(const RealField& u) const {
    RealField out(u.size());
    for (size_t j = 0; j < u.size(); ++j) out[j] = F(u[j]);
    return out;
}

RealField Nonlinearity::u_f_minus_F(const RealField& u) const {
    RealField out(u.size());
    for (size_t j = 0; j < u.size(); ++j) out[j] = u[j] * f(u[j]) - F(u[j]);
    return out;
}

std::string Nonlinearity::describe() const {
    switch (kind_) {
        case Kind::SignedPower: return "signed_power(p=" + std::to_string(p_) + ")";
        case Kind::PurePower: return "pure_power(p=" + std::to_string(p_) + ")";
        case Kind::Disabled: return "disabled";
    }
    return "";
}

}  // namespace bousq
