#pragma once

#include "redcalc/rational.hpp"

#include <cstddef>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace redcalc {

/// Power series with exact integer coefficients c_0..c_N (order N).
class TruncatedSeries {
public:
    /// Zero series of the given order.
    explicit TruncatedSeries(std::size_t order = 0) : c_(order + 1) {}
    /// Takes the coefficients as given; the order is coeffs.size() - 1.
    explicit TruncatedSeries(std::vector<BigInt> coeffs);

    static TruncatedSeries constant(const BigInt& value, std::size_t order);
    /// coeff * z^k (zero if k > order).
    static TruncatedSeries monomial(const BigInt& coeff, std::size_t k, std::size_t order);

    std::size_t order() const { return c_.size() - 1; }
    /// Index of the first nonzero coefficient, order()+1 for the zero series.
    std::size_t valuation() const;

    /// Coefficient of z^n; zero beyond the order.
    const BigInt& operator[](std::size_t n) const;
    BigInt& at(std::size_t n);
    std::span<const BigInt> coefficients() const { return c_; }

    TruncatedSeries truncated(std::size_t order) const;

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(const BigInt& k);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, const BigInt& k) { return a *= k; }
    friend TruncatedSeries operator*(const BigInt& k, TruncatedSeries a) { return a *= k; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    /// Exact quotient. DomainError if b has zero constant term, ExactnessError
    /// if some coefficient is not divisible.
    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<BigInt> c_;
};

/// f(g(z)) by Horner evaluation in the truncated ring. DomainError unless g(0) = 0.
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g);

/// z^2/(1-2z)^2.
TruncatedSeries sigma_series(std::size_t order);
/// sigma iterated r times (r = 0 gives z).
TruncatedSeries sigma_power(unsigned r, std::size_t order);

enum class BaseFamily { CatalanB, InvSqrt1m4z, F0Second, ChainC, LAll };

TruncatedSeries base_series(BaseFamily family, std::size_t order);
/// Name lookup: catalan_B, inv_sqrt_1m4z, F0_second, chain_C, L_all. DomainError otherwise.
TruncatedSeries base_series(std::string_view name, std::size_t order);

/// Trees with register at most r.
TruncatedSeries B_r_series(unsigned r, std::size_t order);
/// Trees with register exactly r (r = 0: the constant 1).
TruncatedSeries B_r_equal_series(unsigned r, std::size_t order);

/// [z^n] = sum over trees of size n of the number of r-branches.
TruncatedSeries F1_series(unsigned r, std::size_t order);
/// [z^n] = sum over trees of size n of X(X-1), X the number of r-branches.
TruncatedSeries F2_series(unsigned r, std::size_t order);
/// [z^n] = sum over trees of size n of the total number of branches.
TruncatedSeries branch_total_series(std::size_t order);

/// Paths with reduction degree at most r.
TruncatedSeries L_r_series(unsigned r, std::size_t order);
/// Paths with reduction degree exactly r.
TruncatedSeries L_r_equal_series(unsigned r, std::size_t order);

enum class FringeMoment { First, Combined };

/// First: [z^n] = sum over paths of the r-th fringe size.
/// Combined: [z^n] = sum of X^2 (second factorial moment plus first).
TruncatedSeries fringe_moment_series(unsigned r, std::size_t order, FringeMoment moment);

/// Polynomial in v for every z-degree up to the order.
class BivariateSeries {
public:
    explicit BivariateSeries(std::size_t order) : rows_(order + 1) {}

    std::size_t order() const { return rows_.size() - 1; }
    /// Coefficient of v^m z^n.
    BigInt coefficient(std::size_t n, std::size_t m) const;
    void set(std::size_t n, std::size_t m, BigInt value);
    /// Coefficients of v^0..v^deg in z-degree n (trailing zeros trimmed).
    std::span<const BigInt> row(std::size_t n) const { return rows_[n]; }

    /// k-th derivative in v at v = 1 as a series in z.
    TruncatedSeries v_derivative_at_one(unsigned k) const;

private:
    std::vector<std::vector<BigInt>> rows_;
};

/// [v^m z^n] = number of paths of length n whose r-th fringe has size m >= 1.
BivariateSeries H_series(unsigned r, std::size_t order);

/// Writes rows "family,r,n,coefficient".
void write_series_csv(std::ostream& out, std::string_view family, unsigned r, const TruncatedSeries& s,
                      bool header = true);

} // namespace redcalc
