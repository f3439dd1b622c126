#include "redcalc/closed_forms.hpp"

#include "redcalc/csv.hpp"
#include "redcalc/errors.hpp"

#include <string>

namespace redcalc {

namespace {

void require_length(unsigned n) {
    if (n == 0) throw DomainError("path length must be at least 1");
}

// b(2n, n+1-k) - 2 b(2n, n-k) + b(2n, n-1-k)
BigInt tree_kernel(const BinomialRow& row, long long n, long long k) {
    return row(n + 1 - k) - 2 * row(n - k) + row(n - 1 - k);
}

// b(2n-1, n-k) - b(2n-1, n-k-1)
BigInt path_kernel(const BinomialRow& row, long long n, long long k) { return row(n - k) - row(n - k - 1); }

} // namespace

ExactRational expected_r_branches(unsigned n, unsigned r) {
    if (r >= 63) return 0;
    const BinomialRow row(2 * n);
    const long long step = 1LL << r;
    BigInt sum = 0;
    for (long long lambda = 1; lambda * step <= n + 1; ++lambda) {
        sum += lambda * tree_kernel(row, n, lambda * step);
    }
    return ExactRational(BigInt(n + 1) * sum, row(n));
}

ExactRational expected_total_branches(unsigned n) {
    const BinomialRow row(2 * n);
    // (2 - 2^-v) k = 2k - (odd part of k)
    BigInt sum = 0;
    for (unsigned long long k = 1; k <= n + 1ULL; ++k) {
        const unsigned long long odd = k >> dyadic_valuation(k);
        sum += BigInt(2 * k - odd) * tree_kernel(row, n, static_cast<long long>(k));
    }
    return ExactRational(BigInt(n + 1) * sum, row(n));
}

BigInt count_paths_rdeg(unsigned n, unsigned r) {
    require_length(n);
    if (r >= 63) return 0;
    const BinomialRow row(2 * n - 1);
    const long long step = 1LL << r;
    BigInt sum = 0;
    for (long long lambda = 1; lambda * step <= n; ++lambda) {
        const BigInt term = lambda * path_kernel(row, n, lambda * step);
        if (lambda % 2 == 1) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return pow4(r + 1) * sum;
}

ExactRational prob_rdeg(unsigned n, unsigned r) { return ExactRational(count_paths_rdeg(n, r), pow4(n)); }

ExactRational expected_rdeg(unsigned n) {
    require_length(n);
    const BinomialRow row(2 * n - 1);
    BigInt sum = 0;
    for (unsigned long long k = 1; k <= n; ++k) {
        const unsigned v = dyadic_valuation(k);
        sum += 8 * BigInt(k) * (pow2(v) - 1) * path_kernel(row, n, static_cast<long long>(k));
    }
    return ExactRational(sum, pow4(n));
}

ExactRational expected_fringe(unsigned n, unsigned r) {
    require_length(n);
    if (r >= 63) return 0;
    const BinomialRow row(2 * n - 1);
    const long long step = 1LL << r;
    BigInt sum = 0;
    for (long long lambda = 1; lambda * step <= n; ++lambda) {
        const BigInt weight = 2 * BigInt(lambda) * lambda * lambda + lambda;
        sum += weight * path_kernel(row, n, lambda * step);
    }
    // 4^(r+1-n) / 3
    return ExactRational(pow4(r + 1) * sum, 3 * pow4(n));
}

ExactRational expected_total_fringe(unsigned n) {
    require_length(n);
    const BinomialRow row(2 * n - 1);
    // Summing the fringe means over r; k^3 2^-v = k^2 (odd part of k) keeps it integral.
    BigInt sum = 0;
    for (unsigned long long k = 1; k <= n; ++k) {
        const unsigned v = dyadic_valuation(k);
        const BigInt kb(k);
        const BigInt weight = 4 * kb * kb * kb - 2 * kb * kb * (k >> v) + kb * (pow2(v + 1) - 1);
        sum += weight * path_kernel(row, n, static_cast<long long>(k));
    }
    return ExactRational(4 * sum, 3 * pow4(n));
}

void write_rational_csv_header(std::ostream& out) {
    write_csv_row(out, {"quantity", "n", "r", "numerator", "denominator", "float64"});
}

void write_rational_csv(std::ostream& out, std::string_view quantity, unsigned n, long r,
                        const ExactRational& value) {
    write_csv_row(out, {std::string(quantity), std::to_string(n), r < 0 ? std::string() : std::to_string(r),
                        value.numerator().str(), value.denominator().str(), format_double(value.to_double())});
}

} // namespace redcalc
