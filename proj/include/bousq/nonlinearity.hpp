#pragma once

#include "bousq/grid.hpp"

#include <string>

namespace bousq {

/// Power-type nonlinearity f with antiderivative F and derivative f'.
///
/// signed_power: f(u) = |u|^{p-1} u   (any real p > 1, odd in u)
/// pure_power:   f(u) = u^p           (integer p >= 2)
/// disabled:     f = f' = F = 0       (linear dynamics)
class Nonlinearity {
  public:
    enum class Kind { SignedPower, PurePower, Disabled };

    static Nonlinearity signed_power(double p);
    static Nonlinearity pure_power(double p);
    static Nonlinearity disabled();

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    bool is_disabled() const { return kind_ == Kind::Disabled; }

    double f(double u) const;
    double f_prime(double u) const;
    double F(double u) const;

    RealField f(const RealField& u) const;
    RealField f_prime(const RealField& u) const;
    RealField F(const RealField& u) const;

    /// u f(u) - F(u), the combination entering the first virial identity.
    RealField u_f_minus_F(const RealField& u) const;

    std::string describe() const;

  private:
    Nonlinearity(Kind kind, double p) : kind_(kind), p_(p) {}
    Kind kind_;
    double p_;
};

}  // namespace bousq
