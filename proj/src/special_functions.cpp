#include "redcalc/special_functions.hpp"

#include "redcalc/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace redcalc {

namespace {

using std::numbers::pi;
constexpr Complex I{0.0, 1.0};

// Lanczos, g = 7, nine terms.
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_p{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr std::array<double, 16> bernoulli{
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0};

void check_pole(Complex s) {
    if (s.imag() == 0.0 && s.real() <= 0.0 && std::nearbyint(s.real()) == s.real()) {
        throw DomainError("Gamma has a pole at a nonpositive integer");
    }
}

// log sin(pi s) without overflow for large |Im s|.
Complex log_sin_pi(Complex s) {
    if (s.imag() < 0.0) return std::conj(log_sin_pi(std::conj(s)));
    const Complex e = std::exp(2.0 * pi * I * s);  // |e| <= 1
    return -I * pi * s + std::log((e - 1.0) / (2.0 * I));
}

Complex cot_pi(Complex s) {
    if (s.imag() >= 0.0) {
        const Complex e = std::exp(2.0 * pi * I * s);
        return I * (e + 1.0) / (e - 1.0);
    }
    const Complex e = std::exp(-2.0 * pi * I * s);
    return I * (1.0 + e) / (1.0 - e);
}

Complex csc_pi(Complex s) {
    if (s.imag() < 0.0) return std::conj(csc_pi(std::conj(s)));
    const Complex half = std::exp(pi * I * s);  // |half| <= 1
    return 2.0 * I * half / (half * half - 1.0);
}

ComplexJet operator*(const ComplexJet& a, const ComplexJet& b) {
    return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
            a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

ComplexJet operator+(const ComplexJet& a, const ComplexJet& b) {
    return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}

// x^(-s) as a jet in s, for real x > 0.
ComplexJet power_jet(double x, Complex s) {
    const double l = std::log(x);
    const Complex v = std::exp(-s * l);
    return {v, -l * v, l * l * v};
}

ComplexJet euler_maclaurin(Complex s) {
    const int n = 30 + static_cast<int>(std::ceil(std::abs(s.imag())));
    ComplexJet sum{};
    for (int k = 1; k < n; ++k) sum = sum + power_jet(k, s);

    const double big_n = n;
    // N^(1-s)/(s-1)
    const ComplexJet tail_power = power_jet(big_n, s - 1.0);
    const Complex inv = 1.0 / (s - 1.0);
    const ComplexJet reciprocal{inv, -inv * inv, 2.0 * inv * inv * inv};
    sum = sum + tail_power * reciprocal;
    // N^(-s)/2
    const ComplexJet half = power_jet(big_n, s);
    sum = sum + ComplexJet{0.5 * half.value, 0.5 * half.d1, 0.5 * half.d2};

    // B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1)
    ComplexJet rising{1.0, 0.0, 0.0};
    double factorial = 1.0;
    for (int k = 1; k <= 15; ++k) {
        const int a = 2 * k - 2;
        if (k == 1) {
            rising = ComplexJet{s, 1.0, 0.0};
        } else {
            rising = rising * ComplexJet{s + double(a - 1), 1.0, 0.0} * ComplexJet{s + double(a), 1.0, 0.0};
        }
        factorial *= (2.0 * k - 1.0) * (2.0 * k);
        const ComplexJet term = rising * power_jet(big_n, s + double(2 * k - 1));
        const double c = bernoulli[k] / factorial;
        sum = sum + ComplexJet{c * term.value, c * term.d1, c * term.d2};
    }
    return sum;
}

} // namespace

Complex log_gamma_c(Complex s) {
    check_pole(s);
    if (s.real() < 0.5) {
        return std::log(pi) - log_sin_pi(s) - log_gamma_c(1.0 - s);
    }
    const Complex z = s - 1.0;
    Complex a = lanczos_p[0];
    for (std::size_t i = 1; i < lanczos_p.size(); ++i) a += lanczos_p[i] / (z + double(i));
    const Complex t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

Complex gamma_c(Complex s) { return std::exp(log_gamma_c(s)); }

Complex digamma_c(Complex s) {
    check_pole(s);
    if (s.real() < 0.5) {
        return digamma_c(1.0 - s) - pi * cot_pi(s);
    }
    Complex shift = 0.0;
    while (std::abs(s) < 12.0) {
        shift -= 1.0 / s;
        s += 1.0;
    }
    const Complex inv2 = 1.0 / (s * s);
    Complex series = 0.0;
    Complex p = inv2;
    for (int k = 1; k <= 8; ++k) {
        series += bernoulli[k] / (2.0 * k) * p;
        p *= inv2;
    }
    return shift + std::log(s) - 0.5 / s - series;
}

Complex trigamma_c(Complex s) {
    check_pole(s);
    if (s.real() < 0.5) {
        const Complex c = csc_pi(s);
        return pi * pi * c * c - trigamma_c(1.0 - s);
    }
    Complex shift = 0.0;
    while (std::abs(s) < 12.0) {
        shift += 1.0 / (s * s);
        s += 1.0;
    }
    const Complex inv = 1.0 / s;
    const Complex inv2 = inv * inv;
    Complex series = 0.0;
    Complex p = inv2 * inv;
    for (int k = 1; k <= 8; ++k) {
        series += bernoulli[k] * p;
        p *= inv2;
    }
    return shift + inv + 0.5 * inv2 + series;
}

ComplexJet zeta_jet(Complex s) {
    if (s == Complex(1.0, 0.0)) {
        throw DomainError("zeta has a pole at s = 1");
    }
    if (s.real() > -0.5) {
        return euler_maclaurin(s);
    }
    // zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    const double l = std::log(2.0 * pi);
    const Complex a = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(pi));
    const ComplexJet pref{a, l * a, l * l * a};
    const Complex h = 0.5 * pi;
    const ComplexJet sine{std::sin(h * s), h * std::cos(h * s), -h * h * std::sin(h * s)};
    const Complex g = gamma_c(1.0 - s);
    const Complex psi = digamma_c(1.0 - s);
    const ComplexJet gamma{g, -g * psi, g * (psi * psi + trigamma_c(1.0 - s))};
    const ComplexJet reflected = euler_maclaurin(1.0 - s);
    const ComplexJet zeta{reflected.value, -reflected.d1, reflected.d2};
    return pref * sine * gamma * zeta;
}

Complex zeta_c(Complex s, int order) {
    const ComplexJet jet = zeta_jet(s);
    switch (order) {
    case 0: return jet.value;
    case 1: return jet.d1;
    case 2: return jet.d2;
    default: throw DomainError("zeta derivative order must be 0, 1 or 2");
    }
}

double bernoulli_even(int k) {
    if (k < 1 || k > 15) {
        throw DomainError("Bernoulli table covers B_2..B_30");
    }
    return bernoulli[k];
}

Complex zeta_derivative_cauchy(Complex center, int order, double radius, int points) {
    // f^(m)(c) = m!/(2 pi i) \oint f(w)/(w-c)^(m+1) dw, trapezoidal on a circle.
    Complex acc = 0.0;
    for (int j = 0; j < points; ++j) {
        const double theta = 2.0 * pi * j / points;
        const Complex e = std::polar(1.0, theta);
        acc += zeta_c(center + radius * e) * std::pow(e, -order);
    }
    double factorial = 1.0;
    for (int m = 2; m <= order; ++m) factorial *= m;
    return factorial * acc / (double(points) * std::pow(radius, order));
}

Complex subst_Z(Complex u) {
    if (u == Complex(-1.0, 0.0)) {
        throw DomainError("Z(u) is undefined at u = -1");
    }
    return u / ((1.0 + u) * (1.0 + u));
}

Complex subst_U(Complex z) {
    const Complex w = std::sqrt(Complex(1.0 - 4.0 * z.real(), -4.0 * z.imag() + 0.0));
    return (1.0 - w) / (1.0 + w);
}

Complex subst_sigma(Complex z) {
    if (z == Complex(0.5, 0.0)) {
        throw DomainError("sigma(z) is undefined at z = 1/2");
    }
    const Complex q = z / (1.0 - 2.0 * z);
    return q * q;
}

} // namespace redcalc
