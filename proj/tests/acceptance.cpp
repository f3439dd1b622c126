// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "cli.hpp"

#include "redcalc/asymptotics.hpp"
#include "redcalc/closed_forms.hpp"
#include "redcalc/csv.hpp"
#include "redcalc/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace redcalc;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

Outcome from_groups(const std::vector<GroupResult>& groups) {
    Outcome o{true, ""};
    for (const auto& g : groups) {
        o.passed = o.passed && g.passed;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += fmt::format("{} {} ({} checks): {}", g.passed ? "ok" : "FAILED", g.name, g.checks, g.detail);
    }
    return o;
}

Outcome figure_agreement(const std::string& name) {
    std::ostringstream out, err;
    const int code = cli::run({"figure", name, "--terms", "20", "--threads", "1"}, out, err);
    if (code != 0) return {false, fmt::format("{} exited {}: {}", name, code, err.str())};
    std::istringstream in(out.str());
    const auto rows = read_csv(in);
    double worst = 0.0;
    std::size_t points = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::stoul(rows[i][1]) < 256) continue;
        worst = std::max(worst, std::abs(std::stod(rows[i][4]) - std::stod(rows[i][5])));
        ++points;
    }
    return {points > 0 && worst <= 0.01,
            fmt::format("{}: max |residual - fourier| = {:.3g} over {} points with n >= 256", name, worst, points)};
}

Outcome residual_tolerances() {
    std::vector<std::string> failures;
    double worst_mean = 0.0;
    for (unsigned r = 1; r <= 3; ++r) {
        const double d = std::abs(asy_r_branch_mean(100, r).value - expected_r_branches(100, r).to_double());
        if (d > 1e-3) failures.push_back(fmt::format("r-branch mean n=100 r={} residual {:.3g} > 1e-3", r, d));
    }
    for (unsigned n : {256U, 1024U, 4096U}) {
        const double a = std::abs(asy_total_branches_mean(n, 20).value - expected_total_branches(n).to_double());
        const double b = std::abs(asy_rdeg(n, 20, Moment::Mean).value - expected_rdeg(n).to_double());
        const double f = std::abs(asy_total_fringe_mean(n, 20).value - expected_total_fringe(n).to_double());
        worst_mean = std::max({worst_mean, a, b, f});
        if (a > 0.01) failures.push_back(fmt::format("total branches n={} residual {:.3g}", n, a));
        if (b > 0.01) failures.push_back(fmt::format("mean degree n={} residual {:.3g}", n, b));
        if (f > 0.01) failures.push_back(fmt::format("total fringe n={} residual {:.3g}", n, f));
    }
    double worst_count = 0.0;
    for (unsigned n = 2; n <= 64; ++n) {
        const double exact = ratio_to_double(count_paths_rdeg(n, 1), 1);
        worst_count = std::max(worst_count, std::abs(asy_count_rdeg(n, 1) - exact) / exact);
    }
    if (worst_count > 1e-9) failures.push_back(fmt::format("degree-1 count relative error {:.3g}", worst_count));
    std::string detail = fmt::format("fluctuating means max residual {:.2e}; degree-1 counts max relative error {:.2e}",
                                     worst_mean, worst_count);
    for (const auto& f : failures) detail += "; " + f;
    return {failures.empty(), detail};
}

} // namespace

int main() {
    using clock = std::chrono::steady_clock;
    struct Criterion {
        int id;
        const char* title;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const unsigned serial = 1;
    const std::vector<Criterion> criteria = {
        {1, "golden series", 5, [] { return from_groups({verify_golden_series()}); }},
        {2, "series identities to order 64", 10, [] { return from_groups({verify_series_identities(64)}); }},
        {3, "three-way cross-validation (serial)", 300,
         [&] { return from_groups({verify_tree_cross(12, serial), verify_path_cross(10, serial)}); }},
        {4, "bounds and sharpness", 120,
         [&] {
             return from_groups({verify_tree_bounds(12, 4096, serial), verify_path_bounds(10, 4096, serial),
                                 verify_rdeg_histogram(10, ReductionConvention::standard())});
         }},
        {5, "asymptotic residuals", 120, residual_tolerances},
        {6, "figure regeneration", 300,
         [] {
             const Outcome a = figure_agreement("branches-fluctuation");
             const Outcome b = figure_agreement("fringe-fluctuation");
             return Outcome{a.passed && b.passed, a.detail + "; " + b.detail};
         }},
        {7, "distributional claims", 300, [&] { return from_groups({verify_clt(100000, 42, serial)}); }},
        {8, "special functions", 5, [] { return from_groups({verify_special_functions()}); }},
        {9, "determinism across thread counts", 1200,
         [] {
             std::ostringstream one, eight, err;
             const int c1 = cli::run({"verify", "--full", "--seed", "42", "--threads", "1"}, one, err);
             const int c8 = cli::run({"verify", "--full", "--seed", "42", "--threads", "8"}, eight, err);
             const bool same = one.str() == eight.str();
             return Outcome{same && !one.str().empty(),
                            fmt::format("reports {} ({} bytes), exit codes {} and {}",
                                        same ? "byte-identical" : "DIFFER", one.str().size(), c1, c8)};
         }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(clock::now() - start).count();
        const bool in_budget = seconds <= c.budget_seconds;
        const bool passed = o.passed && in_budget;
        failures += passed ? 0 : 1;
        std::cout << fmt::format("[{}] criterion {}: {} ({:.2f} s of {:.0f} s{}) -- {}\n", passed ? "PASS" : "FAIL",
                                 c.id, c.title, seconds, c.budget_seconds, in_budget ? "" : ", OVER BUDGET",
                                 o.detail)
                  << std::flush;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
