#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <vector>

namespace redcalc {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational in canonical reduced form (denominator > 0).
/// Equality is structural, so two values compare equal iff they are the same number.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(long long value) : value_(value) {}  // NOLINT: implicit by design of arithmetic
    ExactRational(const BigInt& value) : value_(value) {}  // NOLINT
    ExactRational(const BigInt& numerator, const BigInt& denominator);

    BigInt numerator() const;
    BigInt denominator() const;

    /// Nearest double, robust for numerators/denominators far outside double range.
    double to_double() const;

    /// "p/q", or "p" when the denominator is 1.
    std::string to_string() const;

    ExactRational& operator+=(const ExactRational& o) { value_ += o.value_; return *this; }
    ExactRational& operator-=(const ExactRational& o) { value_ -= o.value_; return *this; }
    ExactRational& operator*=(const ExactRational& o) { value_ *= o.value_; return *this; }
    ExactRational& operator/=(const ExactRational& o);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
    friend ExactRational operator-(const ExactRational& a) { ExactRational r; r.value_ = -a.value_; return r; }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b);

private:
    boost::multiprecision::cpp_rational value_;
};

/// Nearest double of a big integer ratio; handles operands beyond 2^1024.
double ratio_to_double(const BigInt& numerator, const BigInt& denominator);

/// Number of one bits in the binary expansion of n.
unsigned binary_weight(unsigned long long n);

/// Exponent of the largest power of two dividing k (k > 0).
unsigned dyadic_valuation(unsigned long long k);

/// binom(m, j), zero when j < 0 or j > m (m >= 0).
BigInt binomial(long long m, long long j);

/// n-th Catalan number.
BigInt catalan(unsigned n);

/// Row m of Pascal's triangle with the zero-outside convention. Built once,
/// then queried many times by the binomial sums.
class BinomialRow {
public:
    explicit BinomialRow(unsigned m);

    const BigInt& operator()(long long j) const;
    unsigned m() const { return m_; }

private:
    unsigned m_;
    std::vector<BigInt> row_;
    BigInt zero_;
};

inline BigInt pow2(unsigned k) { return BigInt(1) << k; }
inline BigInt pow4(unsigned k) { return BigInt(1) << (2 * k); }

} // namespace redcalc
