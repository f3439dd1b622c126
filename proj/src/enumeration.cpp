#include "redcalc/enumeration.hpp"

#include "redcalc/asymptotics.hpp"
#include "redcalc/errors.hpp"
#include "redcalc/parallel.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace redcalc {

namespace {

// All preorder shape words of size m, in a fixed order (internal before leaf).
class ShapeWords {
public:
    ShapeWords(unsigned m, const std::function<void(std::span<const std::uint8_t>)>& emit)
        : m_(m), word_(2 * m + 1), emit_(emit) {}

    void run() { extend(0, 0, 1); }

private:
    // Depth is bounded by the word length (at most 2*cap+1).
    void extend(unsigned pos, unsigned internal, unsigned pending) {
        if (pos == word_.size()) {
            emit_(word_);
            return;
        }
        if (internal < m_) {
            word_[pos] = 1;
            extend(pos + 1, internal + 1, pending + 1);
        }
        const unsigned leaves = pos - internal;
        if (leaves < m_ + 1 && (pending > 1 || pos + 1 == word_.size())) {
            word_[pos] = 0;
            extend(pos + 1, internal, pending - 1);
        }
    }

    unsigned m_;
    std::vector<std::uint8_t> word_;
    const std::function<void(std::span<const std::uint8_t>)>& emit_;
};

void check_cap(unsigned n, unsigned cap, const char* what) {
    if (n > cap) {
        throw ResourceCapError(std::string(what) + " enumeration of size " + std::to_string(n) +
                               " exceeds the cap " + std::to_string(cap));
    }
}

unsigned floor_log2(unsigned long long x) { return static_cast<unsigned>(std::bit_width(x) - 1); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

constexpr std::size_t sample_chunk = 1000;

} // namespace

void StatAccumulator::add(std::uint64_t x) {
    count += 1;
    sum += x;
    sum_squares += BigInt(x) * x;
    if (histogram.size() <= x) histogram.resize(x + 1);
    histogram[x] += 1;
}

void StatAccumulator::merge(const StatAccumulator& other) {
    count += other.count;
    sum += other.sum;
    sum_squares += other.sum_squares;
    if (histogram.size() < other.histogram.size()) histogram.resize(other.histogram.size());
    for (std::size_t i = 0; i < other.histogram.size(); ++i) histogram[i] += other.histogram[i];
}

ExactRational StatAccumulator::mean() const { return ExactRational(sum, count); }

ExactRational StatAccumulator::variance() const {
    const ExactRational m = mean();
    return ExactRational(sum_squares, count) - m * m;
}

std::uint64_t StatAccumulator::min() const {
    for (std::size_t i = 0; i < histogram.size(); ++i) {
        if (histogram[i] != 0) return i;
    }
    throw DomainError("empty accumulator has no minimum");
}

std::uint64_t StatAccumulator::max() const {
    for (std::size_t i = histogram.size(); i-- > 0;) {
        if (histogram[i] != 0) return i;
    }
    throw DomainError("empty accumulator has no maximum");
}

void for_each_tree_with_left_size(unsigned n, unsigned left_size,
                                  const std::function<void(const BinaryTree&)>& visit) {
    if (n == 0) {
        visit(BinaryTree::leaf());
        return;
    }
    if (left_size >= n) {
        throw DomainError("left subtree size must be below n");
    }
    const unsigned right_size = n - 1 - left_size;
    std::vector<std::uint8_t> word(2 * n + 1);
    word[0] = 1;
    const std::function<void(std::span<const std::uint8_t>)> on_left = [&](std::span<const std::uint8_t> left) {
        std::copy(left.begin(), left.end(), word.begin() + 1);
        const std::function<void(std::span<const std::uint8_t>)> on_right =
            [&](std::span<const std::uint8_t> right) {
                std::copy(right.begin(), right.end(), word.begin() + 1 + static_cast<std::ptrdiff_t>(left.size()));
                visit(BinaryTree::from_preorder(word));
            };
        ShapeWords(right_size, on_right).run();
    };
    ShapeWords(left_size, on_left).run();
}

void for_each_tree(unsigned n, const std::function<void(const BinaryTree&)>& visit, unsigned cap) {
    check_cap(n, cap, "tree");
    if (n == 0) {
        visit(BinaryTree::leaf());
        return;
    }
    for (unsigned l = 0; l < n; ++l) for_each_tree_with_left_size(n, l, visit);
}

std::vector<BinaryTree> enumerate_trees(unsigned n, unsigned cap) {
    std::vector<BinaryTree> out;
    for_each_tree(n, [&](const BinaryTree& t) { out.push_back(t); }, cap);
    return out;
}

void for_each_path_with_prefix(unsigned n, unsigned prefix_length, std::uint64_t prefix,
                               const std::function<void(std::span<const Step>)>& visit) {
    if (n == 0) throw DomainError("paths have length at least 1");
    if (prefix_length > n) throw DomainError("prefix longer than the path");
    std::vector<Step> steps(n, Step::U);
    for (unsigned i = prefix_length; i-- > 0;) {
        steps[i] = static_cast<Step>(prefix & 3U);
        prefix >>= 2;
    }
    if (prefix_length == n) {
        visit(steps);
        return;
    }
    while (true) {
        visit(steps);
        unsigned i = n;
        while (i-- > prefix_length) {
            const unsigned digit = static_cast<unsigned>(steps[i]) + 1;
            if (digit < 4) {
                steps[i] = static_cast<Step>(digit);
                break;
            }
            steps[i] = Step::U;
            if (i == prefix_length) return;
        }
    }
}

void for_each_path(unsigned n, const std::function<void(const LatticePath&)>& visit, unsigned cap) {
    check_cap(n, cap, "path");
    for_each_path_with_prefix(n, 0, 0, [&](std::span<const Step> s) {
        visit(LatticePath(std::vector<Step>(s.begin(), s.end())));
    });
}

std::vector<LatticePath> enumerate_paths(unsigned n, unsigned cap) {
    std::vector<LatticePath> out;
    for_each_path(n, [&](const LatticePath& p) { out.push_back(p); }, cap);
    return out;
}

TreeStats tree_stats(unsigned n, std::optional<unsigned> r_max, unsigned threads, unsigned cap) {
    check_cap(n, cap, "tree");
    const unsigned top = r_max.value_or(floor_log2(n + 1ULL));
    const std::size_t tasks = std::max(1U, n);
    std::vector<TreeStats> slots(tasks);
    parallel_for(tasks, threads, [&](std::size_t task) {
        TreeStats& local = slots[task];
        local.r_branches.resize(top + 1);
        for_each_tree_with_left_size(n, static_cast<unsigned>(task), [&](const BinaryTree& t) {
            const BranchCounts bc = branch_counts(t);
            for (unsigned r = 0; r <= top; ++r) local.r_branches[r].add(bc.at(r));
            local.total.add(bc.total);
            local.registers.add(bc.counts.size() - 1);
        });
    });
    TreeStats result;
    result.n = n;
    result.r_branches.resize(top + 1);
    for (const TreeStats& s : slots) {
        for (unsigned r = 0; r <= top; ++r) result.r_branches[r].merge(s.r_branches[r]);
        result.total.merge(s.total);
        result.registers.merge(s.registers);
    }
    return result;
}

PathStats path_stats(unsigned n, std::optional<unsigned> r_max, unsigned threads, unsigned cap) {
    check_cap(n, cap, "path");
    if (n == 0) throw DomainError("paths have length at least 1");
    const unsigned top = r_max.value_or(floor_log2(n));
    const unsigned prefix_length = std::min(n, 3U);
    const std::size_t tasks = std::size_t{1} << (2 * prefix_length);
    std::vector<PathStats> slots(tasks);
    parallel_for(tasks, threads, [&](std::size_t task) {
        PathStats& local = slots[task];
        local.fringe.resize(top + 1);
        std::vector<Step> a;
        std::vector<Step> b;
        std::vector<std::size_t> sizes;
        for_each_path_with_prefix(n, prefix_length, task, [&](std::span<const Step> steps) {
            sizes.assign(1, steps.size());
            a.assign(steps.begin(), steps.end());
            while (a.size() > 1) {
                reduce_steps(a, b);
                sizes.push_back(b.size());
                a.swap(b);
            }
            std::uint64_t total = 0;
            for (const auto s : sizes) total += s;
            local.rdeg.add(sizes.size() - 1);
            for (unsigned r = 0; r <= top; ++r) local.fringe[r].add(r < sizes.size() ? sizes[r] : 0);
            local.total_fringe.add(total);
        });
    });
    PathStats result;
    result.n = n;
    result.fringe.resize(top + 1);
    for (const PathStats& s : slots) {
        result.rdeg.merge(s.rdeg);
        for (unsigned r = 0; r <= top; ++r) result.fringe[r].merge(s.fringe[r]);
        result.total_fringe.merge(s.total_fringe);
    }
    return result;
}

BinaryTree sample_tree(std::size_t n, SeededGenerator& gen) {
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    const std::size_t nodes = 2 * n + 1;
    std::vector<std::size_t> left(nodes, none);
    std::vector<std::size_t> right(nodes, none);
    std::vector<std::size_t> parent(nodes, none);
    std::size_t root = 0;
    std::size_t count = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        // Pick any existing node and graft a new leaf beside it.
        const std::size_t x = gen.below(count);
        const std::size_t y = count;
        const std::size_t z = count + 1;
        count += 2;
        const std::size_t p = parent[x];
        if (p == none) {
            root = y;
        } else if (left[p] == x) {
            left[p] = y;
        } else {
            right[p] = y;
        }
        parent[y] = p;
        if (gen.coin()) {
            left[y] = x;
            right[y] = z;
        } else {
            left[y] = z;
            right[y] = x;
        }
        parent[x] = y;
        parent[z] = y;
    }
    std::vector<std::uint8_t> shape;
    shape.reserve(nodes);
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        if (left[v] == none) {
            shape.push_back(0);
        } else {
            shape.push_back(1);
            stack.push_back(right[v]);
            stack.push_back(left[v]);
        }
    }
    return BinaryTree::from_preorder(std::move(shape));
}

LatticePath sample_path(std::size_t n, SeededGenerator& gen) {
    if (n == 0) throw DomainError("paths have length at least 1");
    std::vector<Step> steps(n);
    for (auto& s : steps) s = static_cast<Step>(gen.below(4));
    return LatticePath(std::move(steps));
}

std::vector<std::uint64_t> sample_statistic(SampleKind kind, std::size_t n, unsigned r, std::size_t samples,
                                            std::uint64_t seed, unsigned threads) {
    if (n == 0) throw DomainError("sampling needs n >= 1");
    std::vector<std::uint64_t> values(samples);
    const SeededGenerator root(seed);
    const std::size_t tasks = (samples + sample_chunk - 1) / sample_chunk;
    parallel_for(tasks, threads, [&](std::size_t task) {
        SeededGenerator gen = root.split(task);
        const std::size_t end = std::min(samples, (task + 1) * sample_chunk);
        for (std::size_t i = task * sample_chunk; i < end; ++i) {
            if (kind == SampleKind::TreeBranches) {
                values[i] = branch_counts(sample_tree(n, gen)).at(r);
            } else {
                const auto sizes = fringe_sizes(sample_path(n, gen));
                values[i] = r < sizes.size() ? sizes[r] : 0;
            }
        }
    });
    return values;
}

KsReport ks_normal(const std::vector<std::uint64_t>& values, double mean, double sd) {
    if (values.empty()) throw DomainError("no observations");
    if (!(sd > 0.0)) throw DomainError("standard deviation must be positive");
    std::map<std::uint64_t, std::size_t> counts;
    double total = 0.0;
    for (const auto v : values) {
        ++counts[v];
        total += static_cast<double>(v);
    }
    const double size = static_cast<double>(values.size());
    KsReport report;
    report.mean = mean;
    report.sd = sd;
    report.samples = values.size();
    report.sample_mean = total / size;
    report.lattice_floor = 1.0 / (2.0 * sd * std::sqrt(2.0 * std::numbers::pi));

    // Raw distance: both one-sided limits at every atom.
    std::size_t below = 0;
    for (const auto& [value, c] : counts) {
        const double phi = normal_cdf((static_cast<double>(value) - mean) / sd);
        report.ks_raw = std::max(report.ks_raw, std::abs(static_cast<double>(below) / size - phi));
        below += c;
        report.ks_raw = std::max(report.ks_raw, std::abs(static_cast<double>(below) / size - phi));
    }

    // Continuity-corrected: both CDFs are step functions with integer jumps.
    const std::uint64_t lo = counts.begin()->first;
    const std::uint64_t hi = counts.rbegin()->first;
    below = 0;
    auto it = counts.begin();
    for (std::uint64_t k = lo == 0 ? 0 : lo - 1;; ++k) {
        if (it != counts.end() && it->first == k) {
            below += it->second;
            ++it;
        }
        const double g = normal_cdf((static_cast<double>(k) + 0.5 - mean) / sd);
        report.ks = std::max(report.ks, std::abs(static_cast<double>(below) / size - g));
        if (k == hi) break;
    }
    return report;
}

KsReport clt_check(SampleKind kind, std::size_t n, unsigned r, std::size_t samples, std::uint64_t seed,
                   unsigned threads) {
    if (samples < 10000) throw DomainError("the normality check needs at least 10^4 samples");
    double mean = 0.0;
    double var = 0.0;
    if (kind == SampleKind::TreeBranches) {
        mean = asy_r_branch_mean(n, r).value;
        var = asy_r_branch_var(n, r).value;
    } else {
        mean = asy_fringe(n, r, Moment::Mean).value;
        var = asy_fringe(n, r, Moment::Variance).value;
    }
    if (!(var > 1e-12)) {
        throw DomainError("the statistic has no positive asymptotic variance for r = " + std::to_string(r));
    }
    return ks_normal(sample_statistic(kind, n, r, samples, seed, threads), mean, std::sqrt(var));
}

ChiSquareReport tree_sampler_uniformity(unsigned n, std::size_t samples, std::uint64_t seed, double significance,
                                        unsigned threads) {
    std::map<std::vector<std::uint8_t>, std::size_t> index;
    for_each_tree(n, [&](const BinaryTree& t) {
        index.emplace(std::vector<std::uint8_t>(t.preorder().begin(), t.preorder().end()), index.size());
    });
    const std::size_t cells = index.size();
    const std::size_t tasks = (samples + sample_chunk - 1) / sample_chunk;
    std::vector<std::vector<std::uint64_t>> slots(tasks, std::vector<std::uint64_t>(cells));
    const SeededGenerator root(seed);
    parallel_for(tasks, threads, [&](std::size_t task) {
        SeededGenerator gen = root.split(task);
        const std::size_t end = std::min(samples, (task + 1) * sample_chunk);
        for (std::size_t i = task * sample_chunk; i < end; ++i) {
            const BinaryTree t = sample_tree(n, gen);
            ++slots[task][index.at(std::vector<std::uint8_t>(t.preorder().begin(), t.preorder().end()))];
        }
    });
    std::vector<std::uint64_t> observed(cells);
    for (const auto& s : slots) {
        for (std::size_t c = 0; c < cells; ++c) observed[c] += s[c];
    }
    const double expected = static_cast<double>(samples) / static_cast<double>(cells);
    ChiSquareReport report;
    report.cells = cells;
    for (const auto o : observed) {
        const double d = static_cast<double>(o) - expected;
        report.statistic += d * d / expected;
    }
    const boost::math::chi_squared dist(static_cast<double>(cells - 1));
    report.critical = boost::math::quantile(boost::math::complement(dist, significance));
    report.passed = report.statistic <= report.critical;
    return report;
}

} // namespace redcalc
