#pragma once

#include "redcalc/special_functions.hpp"

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace redcalc {

inline constexpr unsigned default_fourier_terms = 20;

/// A floating evaluation of an asymptotic expansion, tagged with the order of
/// the omitted error term.
struct AsymptoticValue {
    double value = 0.0;
    std::string error_order;
    unsigned long n = 0;
    int r = -1;      // -1 when not applicable
    unsigned K = 0;  // Fourier terms per side, 0 when no fluctuation is involved
};

enum class FluctuationFamily { BranchesTotal, RdegMean, RdegVar, FringeTotal };

/// chi_k = 2 pi i k / log 2.
Complex chi(int k);

/// Fourier coefficients of a mean-zero 1-periodic fluctuation. The k and -k
/// coefficients are computed independently, so realness of the sum is a test
/// rather than an assumption.
struct FluctuationSpec {
    FluctuationFamily family;
    unsigned K;
    std::vector<Complex> positive;  // index k-1 holds the coefficient of e^{2 pi i k x}
    std::vector<Complex> negative;  // index k-1 holds the coefficient of e^{-2 pi i k x}

    /// Complex partial sum at x reduced mod 1; the imaginary part is rounding residue.
    Complex evaluate_complex(double x) const;
    double evaluate(double x) const { return evaluate_complex(x).real(); }
};

/// Coefficients computed once per (family, K) and shared read-only afterwards.
std::shared_ptr<const FluctuationSpec> fluctuation(FluctuationFamily family, unsigned K = default_fourier_terms);

double delta_branches(double x, unsigned K = default_fourier_terms);
double delta_rdeg_mean(double x, unsigned K = default_fourier_terms);  // delta_1
double delta_rdeg_var(double x, unsigned K = default_fourier_terms);   // delta_2
double delta_fringe(double x, unsigned K = default_fourier_terms);

/// Expected number and variance of r-branches in a tree of size n.
AsymptoticValue asy_r_branch_mean(unsigned long n, unsigned r);
AsymptoticValue asy_r_branch_var(unsigned long n, unsigned r);

/// Total branches: smooth part only, and with the fluctuation.
double total_branches_constant();
AsymptoticValue asy_total_branches_smooth(unsigned long n);
AsymptoticValue asy_total_branches_mean(unsigned long n, unsigned K = default_fourier_terms);

enum class Moment { Mean, Variance };

double rdeg_mean_constant();
double rdeg_var_constant();
AsymptoticValue asy_rdeg(unsigned long n, unsigned K, Moment which);

/// Main term for the number of paths of length n with reduction degree r (r >= 1).
double asy_count_rdeg(unsigned long n, unsigned r);

/// Fringe size mean/variance. theta_r is metadata for the error term and is
/// absent where its formula degenerates (r <= 1).
AsymptoticValue asy_fringe(unsigned long n, unsigned r, Moment which);
std::optional<double> fringe_theta(unsigned r);

double total_fringe_constant();
AsymptoticValue asy_total_fringe_smooth(unsigned long n);
AsymptoticValue asy_total_fringe_mean(unsigned long n, unsigned K = default_fourier_terms);

inline double log4(double n) { return std::log(n) / std::log(4.0); }

} // namespace redcalc
