#include "redcalc/series.hpp"

#include "redcalc/csv.hpp"
#include "redcalc/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace redcalc {

namespace {

const BigInt& zero() {
    static const BigInt z = 0;
    return z;
}

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) {
        throw DomainError("series orders differ (" + std::to_string(a.order()) + " vs " +
                          std::to_string(b.order()) + ")");
    }
}

// 1/(1 - 4s)^k for a series s with s(0) = 0.
TruncatedSeries inverse_power_1m4s(const TruncatedSeries& s, unsigned k) {
    const std::size_t order = s.order();
    const TruncatedSeries base = TruncatedSeries::constant(1, order) - s * BigInt(4);
    TruncatedSeries denom = TruncatedSeries::constant(1, order);
    for (unsigned i = 0; i < k; ++i) denom = denom * base;
    return TruncatedSeries::constant(1, order) / denom;
}

} // namespace

TruncatedSeries::TruncatedSeries(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
}

TruncatedSeries TruncatedSeries::constant(const BigInt& value, std::size_t order) {
    TruncatedSeries s(order);
    s.c_[0] = value;
    return s;
}

TruncatedSeries TruncatedSeries::monomial(const BigInt& coeff, std::size_t k, std::size_t order) {
    TruncatedSeries s(order);
    if (k <= order) s.c_[k] = coeff;
    return s;
}

std::size_t TruncatedSeries::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) return i;
    }
    return c_.size();
}

const BigInt& TruncatedSeries::operator[](std::size_t n) const { return n < c_.size() ? c_[n] : zero(); }

BigInt& TruncatedSeries::at(std::size_t n) {
    if (n >= c_.size()) {
        throw DomainError("coefficient index " + std::to_string(n) + " beyond order " + std::to_string(order()));
    }
    return c_[n];
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
    TruncatedSeries s(order);
    for (std::size_t i = 0; i <= std::min(order, this->order()); ++i) s.c_[i] = c_[i];
    return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    require_same_order(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    require_same_order(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const BigInt& k) {
    for (auto& c : c_) c *= k;
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_order(a, b);
    const std::size_t order = a.order();
    TruncatedSeries out(order);
    const std::size_t va = a.valuation();
    const std::size_t vb = b.valuation();
    for (std::size_t i = va; i <= order; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = vb; i + j <= order; ++j) {
            if (b.c_[j] != 0) out.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return out;
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_order(a, b);
    if (b.c_[0] == 0) {
        throw DomainError("series division by a divisor with zero constant term");
    }
    const std::size_t order = a.order();
    TruncatedSeries q(order);
    for (std::size_t n = 0; n <= order; ++n) {
        BigInt acc = a.c_[n];
        for (std::size_t k = 0; k < n; ++k) {
            if (q.c_[k] != 0 && b.c_[n - k] != 0) acc -= q.c_[k] * b.c_[n - k];
        }
        BigInt rem;
        divide_qr(acc, b.c_[0], q.c_[n], rem);
        if (rem != 0) {
            throw ExactnessError("series quotient is not integral at z^" + std::to_string(n));
        }
    }
    return q;
}

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
    require_same_order(f, g);
    const std::size_t v = g.valuation();
    if (v == 0) {
        throw DomainError("composition needs an inner series without constant term");
    }
    const std::size_t order = f.order();
    // Terms f_k g^k with k*v > order vanish after truncation.
    const std::size_t top = std::min(order, v > order ? 0 : order / v);
    TruncatedSeries result = TruncatedSeries::constant(f[top], order);
    for (std::size_t k = top; k-- > 0;) {
        result = result * g;
        result.at(0) += f[k];
    }
    return result;
}

TruncatedSeries sigma_series(std::size_t order) {
    TruncatedSeries s(order);
    for (std::size_t n = 2; n <= order; ++n) {
        s.at(n) = BigInt(n - 1) << (n - 2);
    }
    return s;
}

TruncatedSeries sigma_power(unsigned r, std::size_t order) {
    TruncatedSeries s = TruncatedSeries::monomial(1, 1, order);
    if (r == 0) return s;
    const TruncatedSeries sigma = sigma_series(order);
    s = sigma;
    for (unsigned i = 1; i < r; ++i) {
        if (s.valuation() > order) break;
        s = compose(s, sigma);
    }
    return s;
}

TruncatedSeries base_series(BaseFamily family, std::size_t order) {
    TruncatedSeries s(order);
    for (std::size_t n = 0; n <= order; ++n) {
        switch (family) {
        case BaseFamily::CatalanB: s.at(n) = catalan(static_cast<unsigned>(n)); break;
        case BaseFamily::InvSqrt1m4z: s.at(n) = binomial(2LL * n, n); break;
        case BaseFamily::F0Second:
            if (n >= 1) s.at(n) = 2 * BigInt(2 * n - 1) * binomial(2LL * n - 2, n - 1);
            break;
        case BaseFamily::ChainC:
            if (n >= 1) s.at(n) = pow2(static_cast<unsigned>(n - 1));
            break;
        case BaseFamily::LAll:
            if (n >= 1) s.at(n) = pow4(static_cast<unsigned>(n));
            break;
        }
    }
    return s;
}

TruncatedSeries base_series(std::string_view name, std::size_t order) {
    if (name == "catalan_B") return base_series(BaseFamily::CatalanB, order);
    if (name == "inv_sqrt_1m4z") return base_series(BaseFamily::InvSqrt1m4z, order);
    if (name == "F0_second") return base_series(BaseFamily::F0Second, order);
    if (name == "chain_C") return base_series(BaseFamily::ChainC, order);
    if (name == "L_all") return base_series(BaseFamily::LAll, order);
    throw DomainError("unknown base series '" + std::string(name) + "'");
}

TruncatedSeries B_r_series(unsigned r, std::size_t order) {
    const TruncatedSeries one = TruncatedSeries::constant(1, order);
    const TruncatedSeries chain = base_series(BaseFamily::ChainC, order);
    const TruncatedSeries sigma = sigma_series(order);
    TruncatedSeries b = one;
    for (unsigned i = 1; i <= r; ++i) {
        b = one + chain * compose(b, sigma);
    }
    return b;
}

TruncatedSeries B_r_equal_series(unsigned r, std::size_t order) {
    if (r == 0) return TruncatedSeries::constant(1, order);
    return B_r_series(r, order) - B_r_series(r - 1, order);
}

namespace {

TruncatedSeries branch_recurrence(TruncatedSeries f, unsigned r) {
    const std::size_t order = f.order();
    const TruncatedSeries chain = base_series(BaseFamily::ChainC, order);
    const TruncatedSeries sigma = sigma_series(order);
    for (unsigned i = 0; i < r; ++i) {
        if (f.valuation() > order) break;
        f = chain * compose(f, sigma);
    }
    return f;
}

} // namespace

TruncatedSeries F1_series(unsigned r, std::size_t order) {
    return branch_recurrence(base_series(BaseFamily::InvSqrt1m4z, order), r);
}

TruncatedSeries F2_series(unsigned r, std::size_t order) {
    return branch_recurrence(base_series(BaseFamily::F0Second, order), r);
}

TruncatedSeries branch_total_series(std::size_t order) {
    const unsigned top = static_cast<unsigned>(std::bit_width(order + 1));  // floor(log2(N+1)) + 1
    TruncatedSeries total(order);
    TruncatedSeries f = base_series(BaseFamily::InvSqrt1m4z, order);
    const TruncatedSeries chain = base_series(BaseFamily::ChainC, order);
    const TruncatedSeries sigma = sigma_series(order);
    for (unsigned r = 0; r <= top; ++r) {
        total += f;
        f = chain * compose(f, sigma);
    }
    return total;
}

TruncatedSeries L_r_series(unsigned r, std::size_t order) {
    const TruncatedSeries four_z = TruncatedSeries::monomial(4, 1, order);
    const TruncatedSeries sigma = sigma_series(order);
    TruncatedSeries l = four_z;
    for (unsigned i = 1; i <= r; ++i) {
        l = compose(l, sigma) * BigInt(4) + four_z;
    }
    return l;
}

TruncatedSeries L_r_equal_series(unsigned r, std::size_t order) {
    if (r == 0) return L_r_series(0, order);
    return L_r_series(r, order) - L_r_series(r - 1, order);
}

TruncatedSeries fringe_moment_series(unsigned r, std::size_t order, FringeMoment moment) {
    const TruncatedSeries s = sigma_power(r, order);
    const BigInt scale = pow4(r);
    TruncatedSeries first = s * inverse_power_1m4s(s, 2) * BigInt(4);
    if (moment == FringeMoment::First) {
        return first * scale;
    }
    TruncatedSeries second = s * s * inverse_power_1m4s(s, 3) * BigInt(32);
    return (second + first) * scale;
}

BigInt BivariateSeries::coefficient(std::size_t n, std::size_t m) const {
    if (n >= rows_.size() || m >= rows_[n].size()) return 0;
    return rows_[n][m];
}

void BivariateSeries::set(std::size_t n, std::size_t m, BigInt value) {
    if (n >= rows_.size()) {
        throw DomainError("z-degree beyond the order of the bivariate series");
    }
    auto& row = rows_[n];
    if (m >= row.size()) {
        if (value == 0) return;
        row.resize(m + 1);
    }
    row[m] = std::move(value);
    while (!row.empty() && row.back() == 0) row.pop_back();
}

TruncatedSeries BivariateSeries::v_derivative_at_one(unsigned k) const {
    TruncatedSeries out(order());
    for (std::size_t n = 0; n < rows_.size(); ++n) {
        BigInt acc = 0;
        for (std::size_t m = k; m < rows_[n].size(); ++m) {
            BigInt falling = 1;
            for (unsigned i = 0; i < k; ++i) falling *= m - i;
            acc += falling * rows_[n][m];
        }
        out.at(n) = acc;
    }
    return out;
}

BivariateSeries H_series(unsigned r, std::size_t order) {
    // H_r(z, v) = 4^r H_0(s, v) with s = sigma^r, H_0(z, v) = sum 4^m v^m z^m.
    BivariateSeries h(order);
    const TruncatedSeries s = sigma_power(r, order);
    TruncatedSeries power = s;
    for (unsigned m = 1; power.valuation() <= order; ++m) {
        const BigInt scale = pow4(r + m);
        for (std::size_t n = power.valuation(); n <= order; ++n) {
            if (power[n] != 0) h.set(n, m, scale * power[n]);
        }
        power = power * s;
    }
    return h;
}

void write_series_csv(std::ostream& out, std::string_view family, unsigned r, const TruncatedSeries& s,
                      bool header) {
    if (header) write_csv_row(out, {"family", "r", "n", "coefficient"});
    for (std::size_t n = 0; n <= s.order(); ++n) {
        write_csv_row(out, {std::string(family), std::to_string(r), std::to_string(n), s[n].str()});
    }
}

} // namespace redcalc
