#pragma once

#include "redcalc/paths.hpp"
#include "redcalc/random.hpp"
#include "redcalc/rational.hpp"
#include "redcalc/trees.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace redcalc {

inline constexpr unsigned default_tree_cap = 15;
inline constexpr unsigned default_path_cap = 13;

/// Exact sums over a population of nonnegative integer observations.
struct StatAccumulator {
    BigInt count = 0;
    BigInt sum = 0;
    BigInt sum_squares = 0;
    std::vector<BigInt> histogram;  // histogram[x] = number of observations equal to x

    void add(std::uint64_t x);
    /// Associative and commutative.
    void merge(const StatAccumulator& other);

    ExactRational mean() const;
    ExactRational variance() const;
    /// sum of X(X-1)
    BigInt factorial_moment_sum() const { return sum_squares - sum; }
    /// Smallest and largest observed value (DomainError when empty).
    std::uint64_t min() const;
    std::uint64_t max() const;

    friend bool operator==(const StatAccumulator&, const StatAccumulator&) = default;
};

/// Calls visit(tree) for each of the C_n trees of size n, in a fixed order.
/// ResourceCapError if n exceeds the cap.
void for_each_tree(unsigned n, const std::function<void(const BinaryTree&)>& visit,
                   unsigned cap = default_tree_cap);
/// The part of the scan whose root has a left subtree of size `left_size`.
void for_each_tree_with_left_size(unsigned n, unsigned left_size,
                                  const std::function<void(const BinaryTree&)>& visit);
std::vector<BinaryTree> enumerate_trees(unsigned n, unsigned cap = default_tree_cap);

/// Calls visit(path) for all 4^n paths of length n (base-4 counter order).
void for_each_path(unsigned n, const std::function<void(const LatticePath&)>& visit,
                   unsigned cap = default_path_cap);
/// The part of the scan whose first `prefix_length` steps encode `prefix` in base 4.
void for_each_path_with_prefix(unsigned n, unsigned prefix_length, std::uint64_t prefix,
                               const std::function<void(std::span<const Step>)>& visit);
std::vector<LatticePath> enumerate_paths(unsigned n, unsigned cap = default_path_cap);

struct TreeStats {
    unsigned n = 0;
    std::vector<StatAccumulator> r_branches;  // r = 0..r_max
    StatAccumulator total;                    // total number of branches
    StatAccumulator registers;                // register function

    friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

/// Exhaustive statistics over all trees of size n. r_max defaults to floor(log2(n+1)).
TreeStats tree_stats(unsigned n, std::optional<unsigned> r_max = std::nullopt, unsigned threads = 1,
                     unsigned cap = default_tree_cap);

struct PathStats {
    unsigned n = 0;
    StatAccumulator rdeg;
    std::vector<StatAccumulator> fringe;  // r = 0..r_max, size 0 beyond the degree
    StatAccumulator total_fringe;

    friend bool operator==(const PathStats&, const PathStats&) = default;
};

/// Exhaustive statistics over all 4^n paths. r_max defaults to floor(log2 n).
PathStats path_stats(unsigned n, std::optional<unsigned> r_max = std::nullopt, unsigned threads = 1,
                     unsigned cap = default_path_cap);

/// Uniform tree of size n (Remy's leaf insertion).
BinaryTree sample_tree(std::size_t n, SeededGenerator& gen);
/// Uniform path of length n.
LatticePath sample_path(std::size_t n, SeededGenerator& gen);

enum class SampleKind { TreeBranches, PathFringe };

/// Sampled values of X_{n;r}: task i of the split uses gen.split(i), so the
/// result does not depend on the thread count.
std::vector<std::uint64_t> sample_statistic(SampleKind kind, std::size_t n, unsigned r, std::size_t samples,
                                            std::uint64_t seed, unsigned threads = 1);

struct KsReport {
    double ks = 0.0;            // continuity-corrected distance, the acceptance statistic
    double ks_raw = 0.0;        // against the continuous normal CDF
    double lattice_floor = 0.0; // half the largest normal atom, a lower bound for ks_raw
    double mean = 0.0;          // theoretical mean used for standardization
    double sd = 0.0;            // theoretical standard deviation
    double sample_mean = 0.0;
    std::size_t samples = 0;
};

/// Kolmogorov-Smirnov distances of integer observations to N(mean, sd^2).
KsReport ks_normal(const std::vector<std::uint64_t>& values, double mean, double sd);

/// Samples X_{n;r} and measures its distance to the normal law with the
/// expansion's mean and variance. DomainError when that variance is not positive
/// or samples < 10^4.
KsReport clt_check(SampleKind kind, std::size_t n, unsigned r, std::size_t samples, std::uint64_t seed,
                   unsigned threads = 1);

struct ChiSquareReport {
    double statistic = 0.0;
    double critical = 0.0;
    std::size_t cells = 0;
    bool passed = false;
};

/// Goodness of fit of sample_tree(n) to the uniform law over all C_n trees.
ChiSquareReport tree_sampler_uniformity(unsigned n, std::size_t samples, std::uint64_t seed,
                                        double significance = 1e-6, unsigned threads = 1);

} // namespace redcalc
