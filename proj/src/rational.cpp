#include "redcalc/rational.hpp"

#include "redcalc/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace redcalc {

namespace mp = boost::multiprecision;

ExactRational::ExactRational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) {
        throw DomainError("rational with zero denominator");
    }
    value_ = mp::cpp_rational(numerator, denominator);
}

BigInt ExactRational::numerator() const { return mp::numerator(value_); }

BigInt ExactRational::denominator() const { return mp::denominator(value_); }

double ExactRational::to_double() const { return ratio_to_double(numerator(), denominator()); }

std::string ExactRational::to_string() const {
    const BigInt den = denominator();
    if (den == 1) {
        return numerator().str();
    }
    return numerator().str() + "/" + den.str();
}

ExactRational& ExactRational::operator/=(const ExactRational& o) {
    if (o.value_ == 0) {
        throw DomainError("division by zero rational");
    }
    value_ /= o.value_;
    return *this;
}

std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

double ratio_to_double(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) {
        throw DomainError("ratio with zero denominator");
    }
    if (numerator == 0) {
        return 0.0;
    }
    const bool negative = (numerator < 0) != (denominator < 0);
    const BigInt num = abs(numerator);
    const BigInt den = abs(denominator);
    // Scale so the integer quotient carries 64+ significant bits.
    const long long shift =
        static_cast<long long>(mp::msb(den)) - static_cast<long long>(mp::msb(num)) + 64;
    BigInt q = shift >= 0 ? BigInt(num << static_cast<unsigned>(shift)) / den
                          : num / BigInt(den << static_cast<unsigned>(-shift));
    const double mantissa = q.convert_to<double>();
    const double value = std::ldexp(mantissa, static_cast<int>(-shift));
    return negative ? -value : value;
}

unsigned binary_weight(unsigned long long n) { return static_cast<unsigned>(std::popcount(n)); }

unsigned dyadic_valuation(unsigned long long k) {
    if (k == 0) {
        throw DomainError("dyadic valuation of 0");
    }
    return static_cast<unsigned>(std::countr_zero(k));
}

BinomialRow::BinomialRow(unsigned m) : m_(m), row_(m + 1) {
    row_[0] = 1;
    for (unsigned j = 1; j <= m; ++j) {
        row_[j] = row_[j - 1] * (m - j + 1) / j;
    }
}

const BigInt& BinomialRow::operator()(long long j) const {
    if (j < 0 || j > static_cast<long long>(m_)) return zero_;
    return row_[static_cast<std::size_t>(j)];
}

BigInt binomial(long long m, long long j) {
    if (m < 0) {
        throw DomainError("binomial with negative upper index");
    }
    if (j < 0 || j > m) return 0;
    j = std::min(j, m - j);
    BigInt result = 1;
    for (long long i = 1; i <= j; ++i) {
        result = result * (m - j + i) / i;
    }
    return result;
}

BigInt catalan(unsigned n) { return binomial(2LL * n, n) / (n + 1); }

} // namespace redcalc
