#include "redcalc/errors.hpp"
#include "redcalc/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace redcalc;

namespace {

constexpr double pi = std::numbers::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_SUITE("special-functions") {

TEST_CASE("gamma values") {
    CHECK(rel(gamma_c(0.5), std::sqrt(pi)) < 1e-13);
    CHECK(rel(gamma_c(5.0), 24.0) < 1e-13);
    CHECK(rel(gamma_c(-0.5), -2.0 * std::sqrt(pi)) < 1e-13);
    CHECK(rel(gamma_c(Complex(0.0, 1.0)), Complex(-0.15494982830181068, -0.49801566811835604)) < 1e-12);
    CHECK_THROWS_AS(gamma_c(0.0), DomainError);
    CHECK_THROWS_AS(gamma_c(-3.0), DomainError);
}

TEST_CASE("gamma recurrence and reflection on a complex grid") {
    for (double re = -4.75; re <= 6.0; re += 0.5) {
        for (double im : {-200.0, -57.3, -3.2, 0.0, 0.7, 12.5, 99.0, 200.0}) {
            const Complex s(re, im);
            // Compare in log space so tiny magnitudes at large |Im s| keep full relative precision.
            const Complex lhs = log_gamma_c(s + 1.0);
            const Complex rhs = std::log(s) + log_gamma_c(s);
            const Complex d = lhs - rhs;
            const double phase = std::remainder(d.imag(), 2.0 * pi);
            CHECK_MESSAGE(std::abs(d.real()) < 1e-10, "s=" << s);
            CHECK_MESSAGE(std::abs(phase) < 1e-10, "s=" << s);
            if (std::abs(im) <= 30.0) CHECK(rel(gamma_c(s + 1.0), s * gamma_c(s)) < 1e-12);
        }
    }
    // |Gamma(1/2 + it)|^2 = pi / cosh(pi t).
    for (double t : {1.0, 10.0, 50.0, 150.0, 200.0}) {
        const double lhs = 2.0 * log_gamma_c(Complex(0.5, t)).real();
        const double rhs = std::log(pi) - (pi * t + std::log1p(std::exp(-2.0 * pi * t)) - std::log(2.0));
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("digamma and trigamma") {
    CHECK(std::abs(digamma_c(1.0) + euler_gamma) < 1e-13);
    CHECK(std::abs(digamma_c(0.5) + euler_gamma + 2.0 * std::log(2.0)) < 1e-13);
    CHECK(std::abs(trigamma_c(1.0) - pi * pi / 6.0) < 1e-12);
    for (double im : {0.3, 5.0, 40.0, 180.0}) {
        const Complex s(0.7, im);
        CHECK(std::abs(digamma_c(s + 1.0) - digamma_c(s) - 1.0 / s) < 1e-12);
        const double h = 1e-5;
        const Complex fd = (log_gamma_c(s + h) - log_gamma_c(s - h)) / (2.0 * h);
        CHECK(std::abs(fd - digamma_c(s)) < 1e-7);
    }
}

TEST_CASE("zeta values") {
    CHECK(std::abs(zeta_c(2.0) - pi * pi / 6.0) < 1e-13);
    CHECK(std::abs(zeta_c(-1.0) + 1.0 / 12.0) < 1e-13);
    CHECK(std::abs(zeta_c(-3.0) - 1.0 / 120.0) < 1e-13);
    CHECK(std::abs(zeta_c(0.0) + 0.5) < 1e-13);
    CHECK(std::abs(zeta_c(0.0, 1) + 0.5 * std::log(2.0 * pi)) < 1e-12);
    CHECK(std::abs(zeta_c(-1.0, 1) - (-0.1654211437)) < 1e-9);
    CHECK(std::abs(zeta_c(-2.0)) < 1e-13);
    for (double t : {14.134725141734693, 21.022039638771555, 25.010857580145688}) {
        CHECK(std::abs(zeta_c(Complex(0.5, t))) < 1e-10);
    }
    CHECK_THROWS_AS(zeta_c(1.0), DomainError);
    CHECK_THROWS_AS(zeta_c(2.0, 3), DomainError);
    CHECK(bernoulli_even(1) == doctest::Approx(1.0 / 6.0));
    CHECK(bernoulli_even(15) == doctest::Approx(8615841276005.0 / 14322.0));
}

TEST_CASE("functional equation inside the strip") {
    for (double re : {-0.45, -0.2, 0.1, 0.3, 0.45}) {
        for (double im : {0.5, 3.0, 17.0, 60.0, 150.0}) {
            const Complex s(re, im);
            const Complex rhs = std::pow(Complex(2.0), s) * std::pow(Complex(pi), s - 1.0) *
                                std::sin(0.5 * pi * s) * gamma_c(1.0 - s) * zeta_c(1.0 - s);
            CHECK_MESSAGE(std::abs(zeta_c(s) - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)), "s=" << s);
        }
    }
}

TEST_CASE("zeta derivatives") {
    const double h = 1e-6;
    for (const Complex s : {Complex(2.5, 0.0), Complex(0.3, 4.0), Complex(-1.5, 9.0), Complex(1.0, 9.06),
                            Complex(-0.9, 120.0)}) {
        const Complex fd = (zeta_c(s + h) - zeta_c(s - h)) / (2.0 * h);
        CHECK_MESSAGE(std::abs(fd - zeta_c(s, 1)) < 1e-6 * std::max(1.0, std::abs(fd)), "s=" << s);
        const Complex fd2 = (zeta_c(s + h, 1) - zeta_c(s - h, 1)) / (2.0 * h);
        CHECK_MESSAGE(std::abs(fd2 - zeta_c(s, 2)) < 1e-6 * std::max(1.0, std::abs(fd2)), "s=" << s);
    }
    const Complex second = zeta_c(0.0, 2);
    CHECK(std::abs(second - zeta_derivative_cauchy(0.0, 2)) < 1e-8);
    CHECK(std::abs(zeta_c(-1.0, 1) - zeta_derivative_cauchy(-1.0, 1)) < 1e-8);
}

TEST_CASE("substitution maps") {
    CHECK(std::abs(subst_Z(0.0)) == 0.0);
    CHECK(std::abs(subst_U(0.0)) == 0.0);
    CHECK(std::abs(subst_Z(subst_U(0.1)) - 0.1) < 1e-12);
    for (double rad : {0.1, 0.4, 0.8}) {
        for (int k = 0; k < 12; ++k) {
            const Complex u = std::polar(rad, 2.0 * pi * k / 12.0);
            CHECK(std::abs(subst_sigma(subst_Z(u)) - subst_Z(u * u)) < 1e-12);
            CHECK(std::abs(subst_U(subst_Z(u)) - u) < 1e-11);
        }
    }
    CHECK_THROWS_AS(subst_Z(-1.0), DomainError);
    CHECK_THROWS_AS(subst_sigma(0.5), DomainError);
}

} // TEST_SUITE
