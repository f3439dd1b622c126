#include "redcalc/asymptotics.hpp"
#include "redcalc/closed_forms.hpp"
#include "redcalc/rational.hpp"
#include "redcalc/series.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

using namespace redcalc;

namespace {

using Delta = std::function<double(double)>;

double period_mean(const Delta& d) {
    double sum = 0.0;
    for (int i = 0; i < 512; ++i) sum += d(i / 512.0);
    return sum / 512.0;
}

double period_max_abs(const Delta& d) {
    double m = 0.0;
    for (int i = 0; i < 2048; ++i) m = std::max(m, std::abs(d(i / 2048.0)));
    return m;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Bounded scaled residuals: the largest is within 10x the median.
void check_bounded(const std::vector<double>& scaled, const char* what) {
    const double mx = *std::max_element(scaled.begin(), scaled.end());
    CHECK_MESSAGE(mx <= 10.0 * median(scaled), what << ": max " << mx << " median " << median(scaled));
}

ExactRational exact_branch_variance(unsigned n, unsigned r) {
    const ExactRational c(catalan(n));
    const ExactRational mean = ExactRational(F1_series(r, n)[n]) / c;
    const ExactRational falling = ExactRational(F2_series(r, n)[n]) / c;
    return falling + mean - mean * mean;
}

ExactRational exact_fringe_variance(unsigned n, unsigned r) {
    const ExactRational scale(pow4(n));
    const ExactRational mean = ExactRational(fringe_moment_series(r, n, FringeMoment::First)[n]) / scale;
    const ExactRational square = ExactRational(fringe_moment_series(r, n, FringeMoment::Combined)[n]) / scale;
    return square - mean * mean;
}

double exact_rdeg_variance(unsigned n) {
    ExactRational sq = 0;
    for (unsigned r = 1; (1ULL << r) <= n; ++r) sq += prob_rdeg(n, r) * ExactRational(r * r);
    const ExactRational m = expected_rdeg(n);
    return (sq - m * m).to_double();
}

} // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("r-branch expansions degenerate at r = 0") {
    for (unsigned long n : {1ul, 7ul, 100ul, 5000ul}) {
        CHECK(asy_r_branch_mean(n, 0).value == doctest::Approx(n + 1.0).epsilon(1e-15));
        CHECK(std::abs(asy_r_branch_var(n, 0).value) < 1e-12);
    }
}

TEST_CASE("r-branch mean at n = 100") {
    const AsymptoticValue v = asy_r_branch_mean(100, 1);
    CHECK(v.value == doctest::Approx(25.376885).epsilon(1e-7));
    CHECK(std::abs(v.value - expected_r_branches(100, 1).to_double()) <= 1e-4);
    CHECK(v.error_order == "O(n^-3)");
    for (unsigned r = 1; r <= 2; ++r) {
        CHECK(std::abs(asy_r_branch_mean(100, r).value - expected_r_branches(100, r).to_double()) <= 1e-3);
    }
}

TEST_CASE("r-branch mean at r = 3 is limited by the truncation term") {
    // n / 4^r is only about 1.6 at n = 100, so the omitted n^-3 term dominates there.
    for (unsigned n = 100; n <= 1600; n *= 2) {
        const double d = std::abs(asy_r_branch_mean(n, 3).value - expected_r_branches(n, 3).to_double());
        const double scaled = d * n * n * n;
        CHECK(scaled >= 2000.0);
        CHECK(scaled <= 5000.0);
        if (n >= 200) CHECK(d <= 1e-3);
    }
}

TEST_CASE("r-branch residuals stay bounded on a geometric grid") {
    for (unsigned r = 1; r <= 2; ++r) {
        std::vector<double> mean_scaled;
        std::vector<double> var_scaled;
        for (unsigned n = 64; n <= 1024; n *= 2) {
            const double dn = n;
            mean_scaled.push_back(std::abs(expected_r_branches(n, r).to_double() - asy_r_branch_mean(n, r).value) *
                                  dn * dn * dn);
            if (n <= 256) {
                var_scaled.push_back(std::abs(exact_branch_variance(n, r).to_double() - asy_r_branch_var(n, r).value) *
                                     dn * dn);
            }
        }
        check_bounded(mean_scaled, "mean");
        check_bounded(var_scaled, "variance");
    }
}

TEST_CASE("branch fluctuation") {
    const Delta d = [](double x) { return delta_branches(x); };
    CHECK(std::abs(period_mean(d)) < 1e-8);
    const double mx = period_max_abs(d);
    CHECK(mx >= 0.05);
    CHECK(mx <= 0.10);
    for (double x : {0.1, 0.37, 0.9}) {
        CHECK(delta_branches(x + 1.0) == doctest::Approx(delta_branches(x)).epsilon(1e-12));
        CHECK(std::abs(fluctuation(FluctuationFamily::BranchesTotal)->evaluate_complex(x).imag()) <= 1e-10);
    }
    CHECK(std::abs(asy_total_branches_mean(4096, 20).value - expected_total_branches(4096).to_double()) <= 0.01);
    std::vector<double> scaled;
    for (unsigned n = 64; n <= 4096; n *= 2) {
        const double dn = n;
        scaled.push_back(std::abs(expected_total_branches(n).to_double() - asy_total_branches_mean(n).value) * dn /
                         std::log(dn));
    }
    check_bounded(scaled, "total branches");
}

TEST_CASE("fluctuation saturation in K") {
    for (const auto family : {FluctuationFamily::BranchesTotal, FluctuationFamily::FringeTotal,
                              FluctuationFamily::RdegMean, FluctuationFamily::RdegVar}) {
        const auto k20 = fluctuation(family, 20);
        CHECK(fluctuation(family, 20) == k20);
        double previous = 1e300;
        for (unsigned K : {1u, 2u, 4u, 8u, 16u}) {
            const auto spec = fluctuation(family, K);
            double diff = 0.0;
            for (int i = 0; i < 256; ++i) {
                diff = std::max(diff, std::abs(spec->evaluate(i / 256.0) - k20->evaluate(i / 256.0)));
            }
            CHECK(diff <= previous);
            previous = diff;
        }
        CHECK(previous < 1e-12);
    }
}

TEST_CASE("reduction degree expansions") {
    for (const auto family : {FluctuationFamily::RdegMean, FluctuationFamily::RdegVar}) {
        const auto spec = fluctuation(family);
        CHECK(std::abs(period_mean([&](double x) { return spec->evaluate(x); })) < 1e-8);
        for (int i = 0; i < 64; ++i) CHECK(std::abs(spec->evaluate_complex(i / 64.0).imag()) <= 1e-10);
    }
    for (unsigned n : {256u, 1024u, 4096u}) {
        CHECK(std::abs(asy_rdeg(n, 20, Moment::Mean).value - expected_rdeg(n).to_double()) <= 0.01);
        CHECK(std::abs(asy_rdeg(n, 20, Moment::Variance).value - exact_rdeg_variance(n)) <= 0.01);
    }
}

TEST_CASE("count asymptotics") {
    CHECK(asy_count_rdeg(4, 1) == doctest::Approx(192.0).epsilon(1e-12));
    CHECK(asy_count_rdeg(8, 1) == doctest::Approx(7168.0).epsilon(1e-12));
    for (unsigned n = 2; n <= 64; ++n) {
        const double exact = ratio_to_double(count_paths_rdeg(n, 1), 1);
        CHECK(std::abs(asy_count_rdeg(n, 1) - exact) <= 1e-9 * exact);
    }
    const double exact20 = ratio_to_double(count_paths_rdeg(20, 2), 1);
    CHECK(std::abs(asy_count_rdeg(20, 2) - exact20) <= 0.02 * exact20);
}

TEST_CASE("fringe expansions") {
    for (unsigned long n : {1ul, 10ul, 999ul}) {
        CHECK(asy_fringe(n, 0, Moment::Mean).value == doctest::Approx(static_cast<double>(n)).epsilon(1e-15));
        CHECK(asy_fringe(n, 0, Moment::Variance).value == 0.0);
    }
    CHECK(asy_fringe(10, 1, Moment::Mean).value == doctest::Approx(2.75).epsilon(1e-15));
    CHECK(std::abs(asy_fringe(10, 1, Moment::Mean).value - expected_fringe(10, 1).to_double()) < 1e-12);
    CHECK_FALSE(fringe_theta(1).has_value());
    REQUIRE(fringe_theta(2).has_value());
    CHECK(*fringe_theta(2) == doctest::Approx(2.0));
    // The error decays like theta_r^-n, so deeper fringes need longer paths.
    for (const auto& [r, n, tol] : {std::tuple{1u, 64u, 1e-9}, std::tuple{2u, 64u, 1e-9}, std::tuple{3u, 192u, 1e-6}}) {
        CHECK(std::abs(asy_fringe(n, r, Moment::Mean).value - expected_fringe(n, r).to_double()) < tol);
        CHECK(std::abs(asy_fringe(n, r, Moment::Variance).value - exact_fringe_variance(n, r).to_double()) < tol);
    }
}

TEST_CASE("total fringe") {
    const Delta d = [](double x) { return delta_fringe(x); };
    CHECK(std::abs(period_mean(d)) < 1e-8);
    for (int i = 0; i < 512; ++i) {
        const double v = delta_fringe(i / 512.0);
        CHECK(v >= -0.09);
        CHECK(v <= 0.06);
    }
    for (unsigned n : {256u, 1024u, 4096u}) {
        CHECK(std::abs(asy_total_fringe_mean(n, 20).value - expected_total_fringe(n).to_double()) <= 0.01);
    }
    CHECK(std::abs(asy_total_branches_smooth(1024).value + delta_branches(5.0) -
                   asy_total_branches_mean(1024).value) < 1e-9);
}

} // TEST_SUITE
