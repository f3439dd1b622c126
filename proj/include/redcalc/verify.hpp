#pragma once

#include "redcalc/paths.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace redcalc {

struct VerifyOptions {
    bool full = false;
    std::uint64_t seed = 42;
    unsigned threads = 1;
    ReductionConvention convention = ReductionConvention::standard();
    bool sampling = true;

    unsigned tree_max() const { return full ? 12 : 10; }
    unsigned path_max() const { return full ? 10 : 8; }
    std::size_t series_order() const { return full ? 64 : 32; }
    std::size_t extremal_max() const { return full ? 4096 : 512; }
    std::size_t clt_samples() const { return full ? 100000 : 20000; }
    std::size_t uniformity_samples() const { return full ? 1000000 : 100000; }
};

struct GroupResult {
    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    std::string detail;  // first counterexample on failure, a summary otherwise
};

GroupResult verify_golden_series();
GroupResult verify_series_identities(std::size_t order);
GroupResult verify_tree_registers(unsigned n_max);
GroupResult verify_tree_cross(unsigned n_max, unsigned threads);
GroupResult verify_path_cross(unsigned n_max, unsigned threads);
/// Exhaustive reduction-degree histogram under `convention` against the series counts.
GroupResult verify_rdeg_histogram(unsigned n_max, const ReductionConvention& convention);
GroupResult verify_tree_bounds(unsigned n_max, std::size_t family_max, unsigned threads);
GroupResult verify_path_bounds(unsigned n_max, std::size_t family_max, unsigned threads);
GroupResult verify_special_functions();
GroupResult verify_asymptotic_residuals();
/// Normality of the sampled branch and fringe counts; one retry with seed + 1.
GroupResult verify_clt(std::size_t samples, std::uint64_t seed, unsigned threads);
GroupResult verify_sampler_uniformity(std::size_t samples, std::uint64_t seed, unsigned threads);

std::vector<GroupResult> run_verify(const VerifyOptions& options);

/// One line per group; ends with a summary line.
void print_verify_report(std::ostream& out, const std::vector<GroupResult>& results);

} // namespace redcalc
