#pragma once

#include <complex>

namespace redcalc {

using Complex = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286061;

/// log Gamma on the principal sheet away from the negative axis; only exp() of
/// it is meaningful after reflection. DomainError at the poles.
Complex log_gamma_c(Complex s);
Complex gamma_c(Complex s);
Complex digamma_c(Complex s);
Complex trigamma_c(Complex s);

/// Value and first two derivatives.
struct ComplexJet {
    Complex value;
    Complex d1;
    Complex d2;
};

/// zeta and its first two derivatives at s. DomainError at s = 1.
ComplexJet zeta_jet(Complex s);

/// order 0, 1 or 2.
Complex zeta_c(Complex s, int order = 0);

/// B_{2k} for k = 1..15 as doubles (the table used by the Euler-Maclaurin tail).
double bernoulli_even(int k);

/// order-th derivative of zeta at `center` from a trapezoidal Cauchy integral.
Complex zeta_derivative_cauchy(Complex center, int order, double radius = 0.25, int points = 64);

/// Z(u) = u/(1+u)^2. DomainError at u = -1.
Complex subst_Z(Complex u);
/// U(z) = (1 - sqrt(1-4z))/(2z) - 1 with U(0) = 0, principal square root.
Complex subst_U(Complex z);
/// sigma(z) = z^2/(1-2z)^2. DomainError at z = 1/2.
Complex subst_sigma(Complex z);

} // namespace redcalc
