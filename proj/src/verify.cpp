#include "redcalc/verify.hpp"

#include "redcalc/asymptotics.hpp"
#include "redcalc/closed_forms.hpp"
#include "redcalc/enumeration.hpp"
#include "redcalc/series.hpp"
#include "redcalc/special_functions.hpp"
#include "redcalc/trees.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <numbers>

namespace redcalc {

namespace {

// Collects checks and keeps the first failure message.
class Checker {
public:
    explicit Checker(std::string name) { result_.name = std::move(name); }

    template <class Message>
    bool expect(bool condition, Message&& message) {
        ++result_.checks;
        if (!condition && result_.passed) {
            result_.passed = false;
            result_.detail = message();
        }
        return condition;
    }

    bool failed() const { return !result_.passed; }

    GroupResult finish(std::string summary) {
        if (result_.passed) result_.detail = std::move(summary);
        return result_;
    }

    void fail(std::string message) {
        if (result_.passed) {
            result_.passed = false;
            result_.detail = std::move(message);
        }
    }

private:
    GroupResult result_;
};

// Runs a group body and turns escaping exceptions into a failure.
template <class Body>
GroupResult guarded(const std::string& name, Body&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        GroupResult r;
        r.name = name;
        r.passed = false;
        r.detail = fmt::format("unexpected error: {}", e.what());
        return r;
    }
}

std::string series_prefix(const TruncatedSeries& s, std::size_t upto) {
    std::string out;
    for (std::size_t n = 0; n <= upto; ++n) {
        if (n) out += ",";
        out += s[n].str();
    }
    return out;
}

unsigned floor_log2(unsigned long long x) { return static_cast<unsigned>(std::bit_width(x) - 1); }

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

} // namespace

GroupResult verify_golden_series() {
    return guarded("golden-series", [] {
        Checker c("golden-series");
        const std::vector<std::vector<long long>> B = {
            {1, 1, 2, 4, 8, 16, 32, 64, 128, 256},
            {1, 1, 2, 5, 14, 42, 132, 428, 1416, 4744},
            {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862},
        };
        for (unsigned r = 1; r <= 3; ++r) {
            const TruncatedSeries s = B_r_series(r, 9);
            for (std::size_t n = 0; n <= 9; ++n) {
                c.expect(s[n] == B[r - 1][n], [&] {
                    return fmt::format("B_{} coefficient of z^{} is {}, expected {}", r, n, s[n].str(), B[r - 1][n]);
                });
            }
        }
        const std::vector<std::vector<long long>> L = {
            {0, 4, 16, 64, 192, 512, 1280, 3072, 7168},
            {0, 4, 16, 64, 256, 1024, 4096, 16384, 65280},
            {0, 4, 16, 64, 256, 1024, 4096, 16384, 65536},
        };
        for (unsigned r = 1; r <= 3; ++r) {
            const TruncatedSeries s = L_r_series(r, 9);
            for (std::size_t n = 0; n <= 8; ++n) {
                c.expect(s[n] == L[r - 1][n], [&] {
                    return fmt::format("L_{} coefficient of z^{} is {}, expected {}", r, n, s[n].str(), L[r - 1][n]);
                });
            }
        }
        // (r, n, m, coefficient of v^m z^n); every other coefficient up to z^9 is zero.
        struct Entry {
            unsigned r;
            std::size_t n, m;
            long long value;
        };
        std::vector<Entry> H;
        for (std::size_t n = 1; n <= 9; ++n) H.push_back({0, n, n, 1LL << (2 * n)});
        const std::vector<Entry> h123 = {
            {1, 2, 1, 16},     {1, 3, 1, 64},      {1, 4, 2, 64},      {1, 4, 1, 192},    {1, 5, 2, 512},
            {1, 5, 1, 512},    {1, 6, 3, 256},     {1, 6, 2, 2560},    {1, 6, 1, 1280},   {1, 7, 3, 3072},
            {1, 7, 2, 10240},  {1, 7, 1, 3072},    {1, 8, 4, 1024},    {1, 8, 3, 21504},  {1, 8, 2, 35840},
            {1, 8, 1, 7168},   {1, 9, 4, 16384},   {1, 9, 3, 114688},  {1, 9, 2, 114688}, {1, 9, 1, 16384},
            {2, 4, 1, 64},     {2, 5, 1, 512},     {2, 6, 1, 2816},    {2, 7, 1, 13312},  {2, 8, 2, 256},
            {2, 8, 1, 58112},  {2, 9, 2, 4096},    {2, 9, 1, 241664},  {3, 8, 1, 256},    {3, 9, 1, 4096},
        };
        H.insert(H.end(), h123.begin(), h123.end());
        for (unsigned r = 0; r <= 3; ++r) {
            const BivariateSeries h = H_series(r, 9);
            for (std::size_t n = 0; n <= 9; ++n) {
                for (std::size_t m = 0; m <= 9; ++m) {
                    long long expected = 0;
                    for (const auto& e : H) {
                        if (e.r == r && e.n == n && e.m == m) expected = e.value;
                    }
                    c.expect(h.coefficient(n, m) == expected, [&] {
                        return fmt::format("H_{} coefficient of v^{} z^{} is {}, expected {}", r, m, n,
                                           h.coefficient(n, m).str(), expected);
                    });
                }
            }
        }
        return c.finish("B_1..B_3, L_1..L_3 and H_0..H_3 match the reference expansions");
    });
}

GroupResult verify_series_identities(std::size_t order) {
    return guarded("series-identities", [order] {
        Checker c("series-identities");
        const TruncatedSeries one = TruncatedSeries::constant(1, order);
        const TruncatedSeries sigma = sigma_series(order);
        const TruncatedSeries B = base_series(BaseFamily::CatalanB, order);
        const TruncatedSeries chain = base_series(BaseFamily::ChainC, order);
        const TruncatedSeries tree_rhs = one + chain * compose(B, sigma);
        c.expect(B == tree_rhs, [&] {
            return fmt::format("tree identity fails; right side starts {}", series_prefix(tree_rhs, 8));
        });

        const TruncatedSeries L = base_series(BaseFamily::LAll, order);
        const TruncatedSeries lat_rhs = compose(L, sigma) * BigInt(4) + TruncatedSeries::monomial(4, 1, order);
        c.expect(L == lat_rhs, [&] {
            return fmt::format("path functional equation fails; right side starts {}", series_prefix(lat_rhs, 8));
        });

        for (unsigned n = 0; n <= 30; ++n) {
            BigInt sum = 0;
            for (unsigned k = 0; 2 * k <= n; ++k) sum += catalan(k) * pow2(n - 2 * k) * binomial(n, 2 * k);
            c.expect(sum == catalan(n + 1), [&] { return fmt::format("Touchard's identity fails at n = {}", n); });
        }

        const unsigned r_top = floor_log2(order) + 1;
        std::vector<TruncatedSeries> equal;
        for (unsigned r = 0; r <= r_top; ++r) equal.push_back(L_r_equal_series(r, order));
        for (std::size_t n = 1; n <= order; ++n) {
            BigInt sum = 0;
            for (const auto& s : equal) sum += s[n];
            c.expect(sum == pow4(static_cast<unsigned>(n)),
                     [&] { return fmt::format("degree counts at length {} sum to {}", n, sum.str()); });
        }
        for (unsigned r = 0; r <= r_top; ++r) {
            const std::size_t expected = std::size_t{1} << r;
            c.expect(expected > order || equal[r].valuation() == expected,
                     [&] { return fmt::format("L_{}^= has valuation {}", r, equal[r].valuation()); });
        }

        for (unsigned r = 1; r <= r_top; ++r) {
            const TruncatedSeries b = B_r_series(r, order);
            const TruncatedSeries be = B_r_equal_series(r, order);
            const std::size_t v = (std::size_t{1} << r) - 1;
            c.expect(v > order || be.valuation() == v,
                     [&] { return fmt::format("B_{}^= has valuation {}", r, be.valuation()); });
            for (std::size_t n = 0; n <= order; ++n) {
                if ((std::size_t{1} << (r + 1)) > n + 1) {
                    c.expect(b[n] == B[n], [&] { return fmt::format("B_{} not stable at z^{}", r, n); });
                }
            }
        }

        const std::size_t bivariate_order = std::min<std::size_t>(order, 32);
        for (unsigned r = 0; r <= 4; ++r) {
            const BivariateSeries h = H_series(r, bivariate_order);
            const TruncatedSeries first = fringe_moment_series(r, bivariate_order, FringeMoment::First);
            const TruncatedSeries combined = fringe_moment_series(r, bivariate_order, FringeMoment::Combined);
            c.expect(first == h.v_derivative_at_one(1),
                     [&] { return fmt::format("first fringe moment routes disagree at r = {}", r); });
            c.expect(combined == h.v_derivative_at_one(2) + h.v_derivative_at_one(1),
                     [&] { return fmt::format("second fringe moment routes disagree at r = {}", r); });
        }
        return c.finish(fmt::format("order {}: tree identity, path functional equation, Touchard n<=30, "
                                    "degree counts sum to 4^n, fringe moment routes agree",
                                    order));
    });
}

GroupResult verify_tree_registers(unsigned n_max) {
    return guarded("tree-registers", [n_max] {
        Checker c("tree-registers");
        for (unsigned n = 0; n <= n_max && !c.failed(); ++n) {
            for_each_tree(n, [&](const BinaryTree& t) {
                if (c.failed()) return;
                const unsigned reg = register_function(t);
                c.expect(reg == register_by_reduction(t), [&] {
                    return fmt::format("register {} but {} reductions for {}", reg, register_by_reduction(t),
                                       format_tree(t));
                });
                if (!t.is_leaf()) {
                    const BinaryTree reduced = reduce_tree(t);
                    c.expect(register_function(reduced) + 1 == reg && reduced.size() < t.size(),
                             [&] { return fmt::format("reduction does not lower the register of {}", format_tree(t)); });
                }
                c.expect(parse_tree(format_tree(t)) == t,
                         [&] { return fmt::format("text round trip fails for {}", format_tree(t)); });
            });
        }
        return c.finish(fmt::format("all trees of size <= {}: register equals reduction count", n_max));
    });
}

GroupResult verify_tree_cross(unsigned n_max, unsigned threads) {
    return guarded("tree-three-way", [n_max, threads] {
        Checker c("tree-three-way");
        const std::size_t order = n_max;
        const TruncatedSeries total_series = branch_total_series(order);
        const unsigned r_top = floor_log2(n_max + 1ULL);
        std::vector<TruncatedSeries> f1, f2;
        for (unsigned r = 0; r <= r_top; ++r) {
            f1.push_back(F1_series(r, order));
            f2.push_back(F2_series(r, order));
        }
        for (unsigned n = 0; n <= n_max; ++n) {
            const TreeStats stats = tree_stats(n, r_top, threads);
            const BigInt population = catalan(n);
            c.expect(stats.total.count == population, [&] { return fmt::format("wrong tree count at n = {}", n); });
            ExactRational sum_of_means = 0;
            for (unsigned r = 0; r <= r_top; ++r) {
                const StatAccumulator& acc = stats.r_branches[r];
                const ExactRational closed = expected_r_branches(n, r);
                sum_of_means += closed;
                c.expect(acc.sum == f1[r][n], [&] {
                    return fmt::format("n={} r={}: oracle sum {} vs series {}", n, r, acc.sum.str(), f1[r][n].str());
                });
                c.expect(acc.factorial_moment_sum() == f2[r][n], [&] {
                    return fmt::format("n={} r={}: oracle X(X-1) sum {} vs series {}", n, r,
                                       acc.factorial_moment_sum().str(), f2[r][n].str());
                });
                c.expect(acc.mean() == closed, [&] {
                    return fmt::format("n={} r={}: oracle mean {} vs closed form {}", n, r, acc.mean().to_string(),
                                       closed.to_string());
                });
            }
            const ExactRational total_closed = expected_total_branches(n);
            c.expect(stats.total.sum == total_series[n], [&] {
                return fmt::format("n={}: total branch sum {} vs series {}", n, stats.total.sum.str(),
                                   total_series[n].str());
            });
            c.expect(stats.total.mean() == total_closed, [&] {
                return fmt::format("n={}: total branch mean {} vs closed form {}", n, stats.total.mean().to_string(),
                                   total_closed.to_string());
            });
            c.expect(sum_of_means == total_closed, [&] { return fmt::format("n={}: r-branch means do not add up", n); });
        }
        return c.finish(fmt::format("n <= {}: enumeration, series and closed forms agree exactly", n_max));
    });
}

GroupResult verify_path_cross(unsigned n_max, unsigned threads) {
    return guarded("path-three-way", [n_max, threads] {
        Checker c("path-three-way");
        const std::size_t order = n_max;
        const unsigned r_top = floor_log2(n_max);
        std::vector<TruncatedSeries> eq, first, combined;
        for (unsigned r = 0; r <= r_top; ++r) {
            eq.push_back(L_r_equal_series(r, order));
            first.push_back(fringe_moment_series(r, order, FringeMoment::First));
            combined.push_back(fringe_moment_series(r, order, FringeMoment::Combined));
        }
        for (unsigned n = 1; n <= n_max; ++n) {
            const PathStats stats = path_stats(n, r_top, threads);
            ExactRational probability = 0;
            ExactRational fringe_total = 0;
            for (unsigned r = 0; r <= r_top; ++r) {
                const BigInt observed = r < stats.rdeg.histogram.size() ? stats.rdeg.histogram[r] : BigInt(0);
                const BigInt closed = count_paths_rdeg(n, r);
                c.expect(observed == eq[r][n] && observed == closed, [&] {
                    return fmt::format("n={} r={}: {} paths enumerated, series {}, closed form {}", n, r,
                                       observed.str(), eq[r][n].str(), closed.str());
                });
                probability += prob_rdeg(n, r);
                const StatAccumulator& acc = stats.fringe[r];
                c.expect(acc.sum == first[r][n] && acc.sum_squares == combined[r][n], [&] {
                    return fmt::format("n={} r={}: fringe sums {} / {} vs series {} / {}", n, r, acc.sum.str(),
                                       acc.sum_squares.str(), first[r][n].str(), combined[r][n].str());
                });
                const ExactRational mean = expected_fringe(n, r);
                fringe_total += mean;
                c.expect(acc.mean() == mean, [&] {
                    return fmt::format("n={} r={}: fringe mean {} vs closed form {}", n, r, acc.mean().to_string(),
                                       mean.to_string());
                });
            }
            c.expect(probability == 1, [&] { return fmt::format("n={}: degree probabilities sum to {}", n,
                                                                 probability.to_string()); });
            c.expect(stats.rdeg.mean() == expected_rdeg(n), [&] {
                return fmt::format("n={}: mean degree {} vs closed form {}", n, stats.rdeg.mean().to_string(),
                                   expected_rdeg(n).to_string());
            });
            const ExactRational total = expected_total_fringe(n);
            c.expect(stats.total_fringe.mean() == total && fringe_total == total, [&] {
                return fmt::format("n={}: total fringe mean {} vs closed form {}", n,
                                   stats.total_fringe.mean().to_string(), total.to_string());
            });
        }
        return c.finish(fmt::format("n <= {}: enumeration, series and closed forms agree exactly", n_max));
    });
}

GroupResult verify_rdeg_histogram(unsigned n_max, const ReductionConvention& convention) {
    return guarded("rdeg-histogram", [n_max, &convention] {
        Checker c("rdeg-histogram");
        const unsigned r_top = floor_log2(n_max);
        std::vector<TruncatedSeries> eq;
        for (unsigned r = 0; r <= r_top; ++r) eq.push_back(L_r_equal_series(r, n_max));
        for (unsigned n = 1; n <= n_max && !c.failed(); ++n) {
            std::vector<BigInt> histogram(r_top + 2);
            std::vector<std::string> witness(r_top + 2);
            for_each_path_with_prefix(n, 0, 0, [&](std::span<const Step> steps) {
                if (c.failed()) return;
                const LatticePath p(std::vector<Step>(steps.begin(), steps.end()));
                try {
                    const unsigned d = std::min(rdeg(p, convention), r_top + 1);
                    if (histogram[d] == 0) witness[d] = format_path(p);
                    histogram[d] += 1;
                } catch (const std::exception& e) {
                    c.fail(fmt::format("counterexample {} (length {}): {}", format_path(p), n, e.what()));
                }
            });
            for (unsigned r = 0; r <= r_top + 1 && !c.failed(); ++r) {
                const BigInt expected = r <= r_top ? eq[r][n] : BigInt(0);
                c.expect(histogram[r] == expected, [&] {
                    return fmt::format("length {}: {} paths of degree {} (e.g. {}), series expects {}", n,
                                       histogram[r].str(), r, witness[r], expected.str());
                });
            }
        }
        return c.finish(fmt::format("all paths of length <= {}: degree histogram equals series counts", n_max));
    });
}

GroupResult verify_tree_bounds(unsigned n_max, std::size_t family_max, unsigned threads) {
    return guarded("tree-bounds", [n_max, family_max, threads] {
        Checker c("tree-bounds");
        for (unsigned n = 0; n <= n_max; ++n) {
            const unsigned r_top = floor_log2(n + 1ULL);
            const TreeStats stats = tree_stats(n, r_top + 1, threads);
            for (unsigned r = 0; r <= r_top + 1; ++r) {
                const std::uint64_t lo = r == 0 ? n + 1 : (n > 0 && r == 1 ? 1 : 0);
                const std::uint64_t hi = (n + 1ULL) >> r;
                const auto& acc = stats.r_branches[r];
                c.expect(acc.min() == lo && acc.max() == hi, [&] {
                    return fmt::format("n={} r={}: observed range [{}, {}], sharp bounds [{}, {}]", n, r, acc.min(),
                                       acc.max(), lo, hi);
                });
            }
            const std::uint64_t lo = n + 1 + (n > 0 ? 1 : 0);
            const std::uint64_t hi = 2ULL * n + 2 - binary_weight(n + 1ULL);
            c.expect(stats.total.min() == lo && stats.total.max() == hi, [&] {
                return fmt::format("n={}: total branches in [{}, {}], sharp bounds [{}, {}]", n, stats.total.min(),
                                   stats.total.max(), lo, hi);
            });
        }
        for (std::size_t m = 1; m <= family_max; ++m) {
            const BinaryTree b = almost_complete(m);
            const BranchCounts counts = branch_counts(b);
            const std::size_t n = m - 1;
            for (unsigned r = 0; (std::size_t{1} << r) <= m; ++r) {
                c.expect(counts.at(r) == (m >> r), [&] {
                    return fmt::format("almost complete tree with {} leaves has {} {}-branches", m, counts.at(r), r);
                });
            }
            c.expect(counts.total == 2 * n + 2 - binary_weight(m),
                     [&] { return fmt::format("almost complete tree with {} leaves misses the upper bound", m); });
            if (m >= 2) {
                c.expect(reduce_tree(b) == almost_complete(m / 2),
                         [&] { return fmt::format("reducing the almost complete tree with {} leaves", m); });
            }
            if (n >= 1) {
                const BranchCounts chain = branch_counts(chain_tree(n, m));
                c.expect(chain.total == n + 2 && chain.counts.size() == 2,
                         [&] { return fmt::format("chain of size {} has {} branches", n, chain.total); });
            }
        }
        return c.finish(fmt::format("n <= {} exhaustive and extremal families up to {} leaves: bounds hold and "
                                    "are attained",
                                    n_max, family_max));
    });
}

GroupResult verify_path_bounds(unsigned n_max, std::size_t family_max, unsigned threads) {
    return guarded("path-bounds", [n_max, family_max, threads] {
        Checker c("path-bounds");
        for (unsigned n = 1; n <= n_max; ++n) {
            const unsigned r_top = floor_log2(n);
            const PathStats stats = path_stats(n, r_top + 1, threads);
            const std::uint64_t d_lo = n > 1 ? 1 : 0;
            c.expect(stats.rdeg.min() == d_lo && stats.rdeg.max() == r_top, [&] {
                return fmt::format("n={}: degree range [{}, {}], sharp bounds [{}, {}]", n, stats.rdeg.min(),
                                   stats.rdeg.max(), d_lo, r_top);
            });
            for (unsigned r = 0; r <= r_top + 1; ++r) {
                const std::uint64_t lo = r == 0 ? n : (n > 1 && r == 1 ? 1 : 0);
                const std::uint64_t hi = n >> r;
                const auto& acc = stats.fringe[r];
                c.expect(acc.min() == lo && acc.max() == hi, [&] {
                    return fmt::format("n={} r={}: fringe range [{}, {}], sharp bounds [{}, {}]", n, r, acc.min(),
                                       acc.max(), lo, hi);
                });
            }
            const std::uint64_t lo = n + (n > 1 ? 1 : 0);
            const std::uint64_t hi = 2ULL * n - binary_weight(n);
            c.expect(stats.total_fringe.min() == lo && stats.total_fringe.max() == hi, [&] {
                return fmt::format("n={}: total fringe in [{}, {}], sharp bounds [{}, {}]", n,
                                   stats.total_fringe.min(), stats.total_fringe.max(), lo, hi);
            });
        }
        for (std::size_t n = 1; n <= family_max; ++n) {
            const LatticePath p = extremal_path(n);
            c.expect(p.length() == n && rdeg(p) == floor_log2(n), [&] {
                return fmt::format("extremal path for n={} has length {} and degree {}", n, p.length(), rdeg(p));
            });
        }
        return c.finish(fmt::format("n <= {} exhaustive and extremal paths up to {}: bounds hold and are attained",
                                    n_max, family_max));
    });
}

GroupResult verify_special_functions() {
    return guarded("special-functions", [] {
        Checker c("special-functions");
        using std::numbers::pi;
        for (double re : {-3.7, -0.4, 0.3, 1.5, 7.25}) {
            for (double im : {-150.0, -20.0, -1.0, 0.5, 3.0, 60.0, 180.0}) {
                const Complex s{re, im};
                const Complex lhs = gamma_c(s + 1.0);
                const Complex rhs = s * gamma_c(s);
                c.expect(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs), [&] {
                    return fmt::format("Gamma recurrence fails at {}{:+}i", re, im);
                });
            }
        }
        c.expect(close(gamma_c(0.5).real(), std::sqrt(pi), 1e-14), [] { return std::string("Gamma(1/2)"); });
        c.expect(close(digamma_c(1.0).real(), -euler_gamma, 1e-13), [] { return std::string("psi(1)"); });
        c.expect(close(zeta_c(2.0).real(), pi * pi / 6.0, 1e-12), [] { return std::string("zeta(2)"); });
        c.expect(close(zeta_c(-1.0).real(), -1.0 / 12.0, 1e-12), [] { return std::string("zeta(-1)"); });
        const double zp = zeta_c(-1.0, 1).real();
        c.expect(close(zp, -0.1654211437, 1e-9), [&] { return fmt::format("zeta'(-1) = {}", zp); });
        const double z2 = zeta_c(0.0, 2).real();
        const double z2_cauchy = zeta_derivative_cauchy(0.0, 2).real();
        c.expect(close(z2, z2_cauchy, 1e-8), [&] { return fmt::format("zeta''(0) {} vs contour {}", z2, z2_cauchy); });

        double worst_mean = 0.0;
        double worst_imag = 0.0;
        for (auto family : {FluctuationFamily::BranchesTotal, FluctuationFamily::RdegMean,
                            FluctuationFamily::RdegVar, FluctuationFamily::FringeTotal}) {
            const auto spec = fluctuation(family);
            double mean = 0.0;
            for (int i = 0; i < 512; ++i) {
                const Complex v = spec->evaluate_complex(i / 512.0);
                mean += v.real() / 512.0;
                worst_imag = std::max(worst_imag, std::abs(v.imag()));
            }
            worst_mean = std::max(worst_mean, std::abs(mean));
        }
        c.expect(worst_mean <= 1e-8, [&] { return fmt::format("fluctuation period mean {}", worst_mean); });
        c.expect(worst_imag <= 1e-10, [&] { return fmt::format("fluctuation imaginary residue {}", worst_imag); });
        return c.finish(fmt::format("zeta'(-1) = {:.10f}, zeta''(0) = {:.10f}, period means <= {:.1e}, "
                                    "imaginary residues <= {:.1e}",
                                    zp, z2, worst_mean, worst_imag));
    });
}

GroupResult verify_asymptotic_residuals() {
    return guarded("asymptotic-residuals", [] {
        Checker c("asymptotic-residuals");
        double worst = 0.0;
        const double d100 = std::abs(asy_r_branch_mean(100, 1).value - expected_r_branches(100, 1).to_double());
        c.expect(d100 <= 1e-4, [&] { return fmt::format("r-branch mean at n=100, r=1: residual {}", d100); });
        // Scaled residuals n^3 |exact - expansion| must not grow along a doubling grid.
        for (unsigned r = 1; r <= 3; ++r) {
            std::vector<double> scaled;
            for (unsigned n = 100; n <= 1600; n *= 2) {
                const double x = n;
                scaled.push_back(std::abs(asy_r_branch_mean(n, r).value - expected_r_branches(n, r).to_double()) *
                                 x * x * x);
            }
            std::vector<double> sorted = scaled;
            std::sort(sorted.begin(), sorted.end());
            const double median = sorted[sorted.size() / 2];
            const double largest = sorted.back();
            c.expect(largest <= 10.0 * median, [&] {
                return fmt::format("r-branch mean, r={}: scaled residual max {} exceeds 10x median {}", r, largest,
                                   median);
            });
        }
        for (unsigned n : {256U, 1024U, 4096U}) {
            const double a = std::abs(asy_total_branches_mean(n).value - expected_total_branches(n).to_double());
            const double b = std::abs(asy_rdeg(n, default_fourier_terms, Moment::Mean).value -
                                      expected_rdeg(n).to_double());
            const double f = std::abs(asy_total_fringe_mean(n).value - expected_total_fringe(n).to_double());
            worst = std::max({worst, a, b, f});
            c.expect(a <= 0.01, [&] { return fmt::format("total branches at n={}: residual {}", n, a); });
            c.expect(b <= 0.01, [&] { return fmt::format("mean degree at n={}: residual {}", n, b); });
            c.expect(f <= 0.01, [&] { return fmt::format("total fringe at n={}: residual {}", n, f); });
        }
        for (unsigned n = 2; n <= 64; ++n) {
            const double exact = ratio_to_double(count_paths_rdeg(n, 1), 1);
            const double approx = asy_count_rdeg(n, 1);
            c.expect(std::abs(approx - exact) <= 1e-9 * exact,
                     [&] { return fmt::format("degree-1 count at n={}: {} vs {}", n, approx, exact); });
        }
        const double exact20 = ratio_to_double(count_paths_rdeg(20, 2), 1);
        const double rel = std::abs(asy_count_rdeg(20, 2) - exact20) / exact20;
        c.expect(rel <= 0.02, [&] { return fmt::format("degree-2 count at n=20: relative error {}", rel); });
        return c.finish(fmt::format("largest mean residual at n in {{256, 1024, 4096}}: {:.2e}", worst));
    });
}

GroupResult verify_clt(std::size_t samples, std::uint64_t seed, unsigned threads) {
    return guarded("clt-sampling", [samples, seed, threads] {
        Checker c("clt-sampling");
        std::string summary;
        const struct {
            SampleKind kind;
            unsigned r;
            const char* label;
        } cases[] = {{SampleKind::TreeBranches, 1, "trees r=1"}, {SampleKind::PathFringe, 2, "paths r=2"}};
        for (const auto& cs : cases) {
            std::uint64_t used = seed;
            KsReport k = clt_check(cs.kind, 1000, cs.r, samples, used, threads);
            if (k.ks > 0.02) {
                used = seed + 1;
                k = clt_check(cs.kind, 1000, cs.r, samples, used, threads);
            }
            c.expect(k.ks <= 0.02, [&] {
                return fmt::format("{}: KS {:.5f} > 0.02 with seeds {} and {}", cs.label, k.ks, seed, seed + 1);
            });
            summary += fmt::format("{}{} KS {:.5f} (raw {:.5f}, lattice floor {:.5f}, seed {})",
                                   summary.empty() ? "" : "; ", cs.label, k.ks, k.ks_raw, k.lattice_floor, used);
        }
        return c.finish(fmt::format("n=1000, {} samples: {}", samples, summary));
    });
}

GroupResult verify_sampler_uniformity(std::size_t samples, std::uint64_t seed, unsigned threads) {
    return guarded("sampler-uniformity", [samples, seed, threads] {
        Checker c("sampler-uniformity");
        const ChiSquareReport report = tree_sampler_uniformity(7, samples, seed, 1e-6, threads);
        c.expect(report.passed, [&] {
            return fmt::format("chi-square {:.2f} exceeds {:.2f} over {} trees", report.statistic, report.critical,
                               report.cells);
        });
        return c.finish(fmt::format("{} samples over {} trees of size 7: chi-square {:.2f} <= {:.2f}", samples,
                                    report.cells, report.statistic, report.critical));
    });
}

std::vector<GroupResult> run_verify(const VerifyOptions& o) {
    std::vector<GroupResult> results;
    results.push_back(verify_golden_series());
    results.push_back(verify_series_identities(o.series_order()));
    results.push_back(verify_rdeg_histogram(o.path_max(), o.convention));
    results.push_back(verify_tree_registers(o.tree_max()));
    results.push_back(verify_tree_cross(o.tree_max(), o.threads));
    results.push_back(verify_path_cross(o.path_max(), o.threads));
    results.push_back(verify_tree_bounds(o.tree_max(), o.extremal_max(), o.threads));
    results.push_back(verify_path_bounds(o.path_max(), o.extremal_max(), o.threads));
    results.push_back(verify_special_functions());
    results.push_back(verify_asymptotic_residuals());
    if (o.sampling) {
        results.push_back(verify_clt(o.clt_samples(), o.seed, o.threads));
        results.push_back(verify_sampler_uniformity(o.uniformity_samples(), o.seed, o.threads));
    }
    return results;
}

void print_verify_report(std::ostream& out, const std::vector<GroupResult>& results) {
    std::size_t failed = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failed;
        out << fmt::format("[{}] {} ({} checks): {}\n", r.passed ? "PASS" : "FAIL", r.name, r.checks, r.detail);
    }
    out << fmt::format("{} of {} groups passed\n", results.size() - failed, results.size());
}

} // namespace redcalc
