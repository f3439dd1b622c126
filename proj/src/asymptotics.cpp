#include "redcalc/asymptotics.hpp"

#include "redcalc/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace redcalc {

namespace {

using std::numbers::ln2;
using std::numbers::pi;

const double sqrt_pi = std::sqrt(pi);

Complex coefficient(FluctuationFamily family, int k) {
    const Complex x = chi(k);
    switch (family) {
    case FluctuationFamily::BranchesTotal:
        return gamma_c(x / 2.0) * zeta_c(x - 1.0) * (x - 1.0) / ln2;
    case FluctuationFamily::RdegMean: {
        const Complex c = 2.0 / (sqrt_pi * ln2 * ln2) * gamma_c((3.0 + x) / 2.0) * zeta_c(1.0 + x);
        return ln2 * c;
    }
    case FluctuationFamily::RdegVar: {
        const Complex g = gamma_c((3.0 + x) / 2.0);
        const ComplexJet z = zeta_jet(1.0 + x);
        const Complex c = 2.0 / (sqrt_pi * ln2 * ln2) * g * z.value;
        const Complex d = 4.0 / (sqrt_pi * ln2 * ln2) * g * (digamma_c(2.0 + x) * z.value + z.d1) - 3.0 * c * ln2;
        return d - c * digamma_c(1.0 + x / 2.0);
    }
    case FluctuationFamily::FringeTotal:
        return 2.0 / (3.0 * sqrt_pi * ln2) * gamma_c((3.0 + x) / 2.0) *
               (2.0 * zeta_c(x - 1.0) + zeta_c(x + 1.0));
    }
    throw DomainError("unknown fluctuation family");
}

void require_fourier_terms(unsigned K) {
    if (K == 0) throw DomainError("at least one Fourier term is required");
}

} // namespace

Complex chi(int k) { return {0.0, 2.0 * pi * k / ln2}; }

Complex FluctuationSpec::evaluate_complex(double x) const {
    const double t = x - std::floor(x);
    Complex sum = 0.0;
    for (unsigned k = 1; k <= K; ++k) {
        const Complex e = std::polar(1.0, 2.0 * pi * k * t);
        sum += positive[k - 1] * e + negative[k - 1] * std::conj(e);
    }
    return sum;
}

std::shared_ptr<const FluctuationSpec> fluctuation(FluctuationFamily family, unsigned K) {
    require_fourier_terms(K);
    static std::mutex mutex;
    static std::map<std::pair<int, unsigned>, std::shared_ptr<const FluctuationSpec>> cache;
    const std::pair<int, unsigned> key{static_cast<int>(family), K};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto spec = std::make_shared<FluctuationSpec>();
    spec->family = family;
    spec->K = K;
    for (unsigned k = 1; k <= K; ++k) {
        spec->positive.push_back(coefficient(family, static_cast<int>(k)));
        spec->negative.push_back(coefficient(family, -static_cast<int>(k)));
    }
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(spec)).first->second;
}

double delta_branches(double x, unsigned K) { return fluctuation(FluctuationFamily::BranchesTotal, K)->evaluate(x); }
double delta_rdeg_mean(double x, unsigned K) { return fluctuation(FluctuationFamily::RdegMean, K)->evaluate(x); }
double delta_rdeg_var(double x, unsigned K) { return fluctuation(FluctuationFamily::RdegVar, K)->evaluate(x); }
double delta_fringe(double x, unsigned K) { return fluctuation(FluctuationFamily::FringeTotal, K)->evaluate(x); }

AsymptoticValue asy_r_branch_mean(unsigned long n, unsigned r) {
    if (n == 0) throw DomainError("expansion needs n >= 1");
    const double q = std::ldexp(1.0, 2 * static_cast<int>(r));  // 4^r
    const double x = static_cast<double>(n);
    const double value = x / q + (1.0 + 5.0 / q) / 6.0 + (q - 1.0 / q) / (20.0 * x) +
                         (5.0 * q * q / 21.0 - 7.0 * q / 10.0 + 97.0 / (210.0 * q)) / (12.0 * x * x);
    return {value, "O(n^-3)", n, static_cast<int>(r), 0};
}

AsymptoticValue asy_r_branch_var(unsigned long n, unsigned r) {
    if (n == 0) throw DomainError("expansion needs n >= 1");
    const double q = std::ldexp(1.0, 2 * static_cast<int>(r));
    const double q2 = q * q;
    const double x = static_cast<double>(n);
    const double value = (q - 1.0) / (3.0 * q2) * x - (2.0 * q2 - 25.0 * q + 23.0) / (90.0 * q2) -
                         (13.0 * q2 * q - 14.0 * q2 + 7.0 * q - 6.0) / (420.0 * q2 * x);
    return {value, "O(n^-2)", n, static_cast<int>(r), 0};
}

double total_branches_constant() {
    const double zeta_prime = zeta_c(-1.0, 1).real();
    return -2.0 * zeta_prime / ln2 - euler_gamma / (12.0 * ln2) - 1.0 / (6.0 * ln2) + 43.0 / 36.0;
}

AsymptoticValue asy_total_branches_smooth(unsigned long n) {
    if (n < 2) throw DomainError("expansion needs n >= 2");
    const double x = static_cast<double>(n);
    return {4.0 * x / 3.0 + log4(x) / 6.0 + total_branches_constant(), "O(log n/n)", n, -1, 0};
}

AsymptoticValue asy_total_branches_mean(unsigned long n, unsigned K) {
    AsymptoticValue v = asy_total_branches_smooth(n);
    v.value += delta_branches(log4(static_cast<double>(n)), K);
    v.K = K;
    return v;
}

double rdeg_mean_constant() { return (euler_gamma + 2.0 - 3.0 * ln2) / (2.0 * ln2); }

double rdeg_var_constant() {
    const double log_pi = std::log(pi);
    const double zeta2 = zeta_c(0.0, 2).real();
    return (pi * pi - 24.0 * log_pi * log_pi - 48.0 * zeta2 - 24.0) / (24.0 * ln2 * ln2) - 2.0 * log_pi / ln2 -
           11.0 / 12.0;
}

AsymptoticValue asy_rdeg(unsigned long n, unsigned K, Moment which) {
    if (n < 2) throw DomainError("expansion needs n >= 2");
    require_fourier_terms(K);
    const double x = log4(static_cast<double>(n));
    const double d1 = delta_rdeg_mean(x, K);
    if (which == Moment::Mean) {
        return {x + rdeg_mean_constant() + d1, "O(n^-1)", n, -1, K};
    }
    const double value = rdeg_var_constant() + delta_rdeg_var(x, K) - 2.0 * rdeg_mean_constant() * d1 - d1 * d1;
    return {value, "O(log n/n)", n, -1, K};
}

double asy_count_rdeg(unsigned long n, unsigned r) {
    if (n == 0 || r == 0) throw DomainError("count expansion needs n >= 1 and r >= 1");
    const double angle = pi * std::ldexp(1.0, -static_cast<int>(r) - 1);
    const double c2 = std::cos(angle) * std::cos(angle);
    const double t = std::tan(angle);
    const double x = static_cast<double>(n);
    return std::pow(4.0 * c2, x) * (4.0 * t * t * x - 2.0 / c2);
}

std::optional<double> fringe_theta(unsigned r) {
    if (r <= 1) return std::nullopt;
    return 4.0 / (2.0 + 2.0 * std::cos(2.0 * pi / std::ldexp(1.0, static_cast<int>(r))));
}

AsymptoticValue asy_fringe(unsigned long n, unsigned r, Moment which) {
    if (n == 0) throw DomainError("expansion needs n >= 1");
    const double q = std::ldexp(1.0, 2 * static_cast<int>(r));
    const double x = static_cast<double>(n);
    if (which == Moment::Mean) {
        return {x / q + (1.0 - 1.0 / q) / 3.0, "O(n^3 theta_r^-n)", n, static_cast<int>(r), 0};
    }
    const double q2 = q * q;
    const double value = (q - 1.0) / (3.0 * q2) * x + (-2.0 * q2 - 5.0 * q + 7.0) / (45.0 * q2);
    return {value, "O(n^5 theta_r^-n)", n, static_cast<int>(r), 0};
}

double total_fringe_constant() { return (5.0 + 3.0 * euler_gamma - 11.0 * ln2) / (18.0 * ln2); }

AsymptoticValue asy_total_fringe_smooth(unsigned long n) {
    if (n < 2) throw DomainError("expansion needs n >= 2");
    const double x = static_cast<double>(n);
    return {4.0 * x / 3.0 + log4(x) / 3.0 + total_fringe_constant(), "O(log n/n)", n, -1, 0};
}

AsymptoticValue asy_total_fringe_mean(unsigned long n, unsigned K) {
    AsymptoticValue v = asy_total_fringe_smooth(n);
    v.value += delta_fringe(log4(static_cast<double>(n)), K);
    v.K = K;
    return v;
}

} // namespace redcalc
