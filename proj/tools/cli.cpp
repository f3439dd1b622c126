#include "cli.hpp"

#include "redcalc/asymptotics.hpp"
#include "redcalc/closed_forms.hpp"
#include "redcalc/csv.hpp"
#include "redcalc/enumeration.hpp"
#include "redcalc/errors.hpp"
#include "redcalc/parallel.hpp"
#include "redcalc/paths.hpp"
#include "redcalc/series.hpp"
#include "redcalc/trees.hpp"
#include "redcalc/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <variant>

namespace redcalc::cli {

namespace {

/// Largest n the figure export evaluates with the exact closed forms.
constexpr unsigned long figure_exact_cap = 4096;

struct RunConfig {
    // shared
    std::optional<unsigned> threads;
    std::uint64_t seed = 42;
    std::string format = "human";
    std::string out_path;
    unsigned cap_trees = default_tree_cap;
    unsigned cap_paths = default_path_cap;
    std::string fault;

    // tree / path
    std::string action;
    std::string input;
    std::string file;

    // table
    std::string quantity;
    std::optional<unsigned> n;
    std::string n_range;
    std::optional<unsigned> r;
    std::size_t order = 9;
    std::string family = "B";
    std::string method = "exact";
    bool check = false;

    // figure
    std::string figure;
    std::optional<double> x_min;
    std::optional<double> x_max;
    unsigned terms = default_fourier_terms;
    std::size_t samples = 0;

    // verify
    bool quick = false;
    bool full = false;
};

class MismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Value = std::variant<ExactRational, double>;

std::string human(const Value& v) {
    if (const auto* q = std::get_if<ExactRational>(&v)) return q->to_string();
    return fmt::format("{:.12g}", std::get<double>(v));
}

double as_double(const Value& v) {
    if (const auto* q = std::get_if<ExactRational>(&v)) return q->to_double();
    return std::get<double>(v);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'", 0);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> inputs(const RunConfig& c) {
    if (!c.file.empty()) return read_lines(c.file);
    if (c.input.empty()) throw UsageError("an input literal or --file is required");
    return {c.input};
}

int cmd_tree(const RunConfig& c, std::ostream& out) {
    const bool csv = c.format == "csv";
    if (csv) write_csv_row(out, {"input", "result"});
    for (const auto& text : inputs(c)) {
        const BinaryTree t = parse_tree(text);
        std::string result;
        if (c.action == "reduce") {
            result = format_tree(reduce_tree(t));
        } else if (c.action == "register") {
            result = std::to_string(register_function(t));
        } else {
            const BranchCounts bc = branch_counts(t);
            for (std::size_t r = 0; r < bc.counts.size(); ++r) result += fmt::format("r={}:{} ", r, bc.counts[r]);
            result += fmt::format("total:{}", bc.total);
        }
        if (csv) {
            write_csv_row(out, {format_tree(t), result});
        } else {
            out << result << '\n';
        }
    }
    return ok;
}

int cmd_path(const RunConfig& c, std::ostream& out) {
    const bool csv = c.format == "csv";
    if (csv) write_csv_row(out, {"input", "result"});
    for (const auto& text : inputs(c)) {
        const LatticePath p = parse_path(text);
        std::string result;
        if (c.action == "reduce") {
            result = format_path(reduce_path(p));
        } else if (c.action == "rdeg") {
            result = std::to_string(rdeg(p));
        } else {
            for (const auto s : fringe_sizes(p)) result += (result.empty() ? "" : " ") + std::to_string(s);
        }
        if (csv) {
            write_csv_row(out, {format_path(p), result});
        } else {
            out << result << '\n';
        }
    }
    return ok;
}

std::vector<unsigned> n_values(const RunConfig& c) {
    if (c.n && !c.n_range.empty()) throw UsageError("use either --n or --n-range");
    if (c.n) return {*c.n};
    if (c.n_range.empty()) throw UsageError("--n or --n-range is required");
    const auto colon = c.n_range.find(':');
    if (colon == std::string::npos) throw ParseError("--n-range must look like A:B", 0);
    unsigned a = 0;
    unsigned b = 0;
    try {
        a = static_cast<unsigned>(std::stoul(c.n_range.substr(0, colon)));
        b = static_cast<unsigned>(std::stoul(c.n_range.substr(colon + 1)));
    } catch (const std::exception&) {
        throw ParseError("--n-range must look like A:B", 0);
    }
    if (a > b) throw UsageError("--n-range needs A <= B");
    std::vector<unsigned> ns;
    for (unsigned n = a; n <= b; ++n) ns.push_back(n);
    return ns;
}

unsigned require_r(const RunConfig& c) {
    if (!c.r) throw UsageError("--r is required for this quantity");
    return *c.r;
}

// The four backends of one table quantity.
struct Backends {
    std::function<Value(unsigned, unsigned)> exact, series, oracle, asymptotic;
    bool needs_r = false;
    bool paths = false;
};

ExactRational perturb(const RunConfig& c, ExactRational v) {
    return c.fault == "series" ? v + ExactRational(1) : v;
}

Backends backends_for(const RunConfig& c) {
    const unsigned threads = resolve_threads(c.threads);
    Backends b;
    const std::string& q = c.quantity;
    if (q == "r-branches-mean") {
        b.needs_r = true;
        b.exact = [](unsigned n, unsigned r) -> Value { return expected_r_branches(n, r); };
        b.series = [&c](unsigned n, unsigned r) -> Value {
            return perturb(c, ExactRational(F1_series(r, n)[n], catalan(n)));
        };
        b.oracle = [&c, threads](unsigned n, unsigned r) -> Value {
            return tree_stats(n, r, threads, c.cap_trees).r_branches[r].mean();
        };
        b.asymptotic = [](unsigned n, unsigned r) -> Value { return asy_r_branch_mean(n, r).value; };
    } else if (q == "branches-total-mean") {
        b.exact = [](unsigned n, unsigned) -> Value { return expected_total_branches(n); };
        b.series = [&c](unsigned n, unsigned) -> Value {
            return perturb(c, ExactRational(branch_total_series(n)[n], catalan(n)));
        };
        b.oracle = [&c, threads](unsigned n, unsigned) -> Value {
            return tree_stats(n, std::nullopt, threads, c.cap_trees).total.mean();
        };
        b.asymptotic = [&c](unsigned n, unsigned) -> Value { return asy_total_branches_mean(n, c.terms).value; };
    } else if (q == "rdeg-mean") {
        b.paths = true;
        b.exact = [](unsigned n, unsigned) -> Value { return expected_rdeg(n); };
        b.series = [&c](unsigned n, unsigned) -> Value {
            BigInt sum = 0;
            for (unsigned r = 1; (1ULL << r) <= n; ++r) sum += r * L_r_equal_series(r, n)[n];
            return perturb(c, ExactRational(sum, pow4(n)));
        };
        b.oracle = [&c, threads](unsigned n, unsigned) -> Value {
            return path_stats(n, std::nullopt, threads, c.cap_paths).rdeg.mean();
        };
        b.asymptotic = [&c](unsigned n, unsigned) -> Value { return asy_rdeg(n, c.terms, Moment::Mean).value; };
    } else if (q == "fringe-mean") {
        b.paths = true;
        b.needs_r = true;
        b.exact = [](unsigned n, unsigned r) -> Value { return expected_fringe(n, r); };
        b.series = [&c](unsigned n, unsigned r) -> Value {
            return perturb(c, ExactRational(fringe_moment_series(r, n, FringeMoment::First)[n], pow4(n)));
        };
        b.oracle = [&c, threads](unsigned n, unsigned r) -> Value {
            return path_stats(n, r, threads, c.cap_paths).fringe[r].mean();
        };
        b.asymptotic = [](unsigned n, unsigned r) -> Value { return asy_fringe(n, r, Moment::Mean).value; };
    } else if (q == "fringe-total-mean") {
        b.paths = true;
        b.exact = [](unsigned n, unsigned) -> Value { return expected_total_fringe(n); };
        b.series = [&c](unsigned n, unsigned) -> Value {
            BigInt sum = 0;
            for (unsigned r = 0; (1ULL << r) <= n; ++r) sum += fringe_moment_series(r, n, FringeMoment::First)[n];
            return perturb(c, ExactRational(sum, pow4(n)));
        };
        b.oracle = [&c, threads](unsigned n, unsigned) -> Value {
            return path_stats(n, std::nullopt, threads, c.cap_paths).total_fringe.mean();
        };
        b.asymptotic = [&c](unsigned n, unsigned) -> Value { return asy_total_fringe_mean(n, c.terms).value; };
    } else {
        throw UsageError("unknown quantity '" + q + "'");
    }
    return b;
}

const std::function<Value(unsigned, unsigned)>& pick(const Backends& b, const std::string& method) {
    if (method == "exact") return b.exact;
    if (method == "series") return b.series;
    if (method == "oracle") return b.oracle;
    return b.asymptotic;
}

bool oracle_within_cap(const RunConfig& c, const Backends& b, unsigned n) {
    return n <= (b.paths ? c.cap_paths : c.cap_trees);
}

// Compares every exact backend; throws MismatchError on disagreement.
void cross_check(const RunConfig& c, const Backends& b, unsigned n, unsigned r) {
    const ExactRational reference = std::get<ExactRational>(b.exact(n, r));
    const auto compare = [&](const char* name, const Value& v) {
        const ExactRational& q = std::get<ExactRational>(v);
        if (q != reference) {
            throw MismatchError(fmt::format("{} at n={} r={}: exact {} but {} {}", c.quantity, n, r,
                                            reference.to_string(), name, q.to_string()));
        }
    };
    compare("series", b.series(n, r));
    if (oracle_within_cap(c, b, n)) compare("oracle", b.oracle(n, r));
}

void require_path_length(const Backends& b, unsigned n) {
    if (b.paths && n == 0) throw DomainError("path length must be at least 1");
}

int table_series(const RunConfig& c, std::ostream& out) {
    const unsigned r = c.r.value_or(0);
    const std::size_t N = c.order;
    TruncatedSeries s;
    const std::string& f = c.family;
    if (f == "B") {
        s = B_r_series(r, N);
    } else if (f == "B_equal") {
        s = B_r_equal_series(r, N);
    } else if (f == "L") {
        s = L_r_series(r, N);
    } else if (f == "L_equal") {
        s = L_r_equal_series(r, N);
    } else if (f == "F1") {
        s = F1_series(r, N);
    } else if (f == "F2") {
        s = F2_series(r, N);
    } else if (f == "branch_total") {
        s = branch_total_series(N);
    } else if (f == "fringe_first") {
        s = fringe_moment_series(r, N, FringeMoment::First);
    } else if (f == "fringe_combined") {
        s = fringe_moment_series(r, N, FringeMoment::Combined);
    } else if (f == "sigma") {
        s = sigma_power(r, N);
    } else {
        s = base_series(f, N);
    }
    if (c.format == "csv") {
        write_series_csv(out, f, r, s);
        return ok;
    }
    for (std::size_t n = 0; n <= N; ++n) out << (n ? ", " : "") << s[n].str();
    out << '\n';
    return ok;
}

int table_rdeg_dist(const RunConfig& c, std::ostream& out) {
    const auto ns = n_values(c);
    const bool csv = c.format == "csv";
    const unsigned threads = resolve_threads(c.threads);
    if (csv) write_rational_csv_header(out);
    for (const unsigned n : ns) {
        if (n == 0) throw DomainError("path length must be at least 1");
        const unsigned top = static_cast<unsigned>(std::bit_width(n) - 1);
        std::optional<PathStats> stats;
        if (c.method == "oracle" || (c.check && n <= c.cap_paths)) stats = path_stats(n, top, threads, c.cap_paths);
        for (unsigned r = 0; r <= top; ++r) {
            const BigInt exact = count_paths_rdeg(n, r);
            BigInt series = L_r_equal_series(r, n)[n];
            if (c.fault == "series") series += 1;
            if (c.check) {
                const BigInt oracle = stats && r < stats->rdeg.histogram.size() ? stats->rdeg.histogram[r] : BigInt(0);
                if (series != exact || (stats && oracle != exact)) {
                    throw MismatchError(fmt::format("rdeg-dist at n={} r={}: exact {}, series {}{}", n, r,
                                                    exact.str(), series.str(),
                                                    stats ? ", oracle " + oracle.str() : std::string()));
                }
            }
            Value value;
            BigInt count = exact;
            if (c.method == "series") {
                count = series;
            } else if (c.method == "oracle") {
                count = r < stats->rdeg.histogram.size() ? stats->rdeg.histogram[r] : BigInt(0);
            }
            if (c.method == "asymptotic") {
                if (r == 0) continue;
                value = asy_count_rdeg(n, r) / std::ldexp(1.0, 2 * static_cast<int>(n));
            } else {
                if (count == 0) continue;
                value = ExactRational(count, pow4(n));
            }
            if (csv) {
                if (const auto* q = std::get_if<ExactRational>(&value)) {
                    write_rational_csv(out, "rdeg-dist", n, r, *q);
                } else {
                    write_csv_row(out, {"rdeg-dist", std::to_string(n), std::to_string(r), "", "",
                                        format_double(std::get<double>(value))});
                }
                continue;
            }
            const std::string prefix = ns.size() > 1 ? fmt::format("n={} ", n) : std::string();
            if (c.method == "asymptotic") {
                out << fmt::format("{}r={}: {}\n", prefix, r, human(value));
            } else {
                out << fmt::format("{}r={}: {}/{}\n", prefix, r, count.str(), pow4(n).str());
            }
        }
    }
    return ok;
}

int cmd_table(const RunConfig& c, std::ostream& out) {
    if (c.quantity == "series-coefficients") return table_series(c, out);
    if (c.quantity == "rdeg-dist") return table_rdeg_dist(c, out);

    const Backends b = backends_for(c);
    const unsigned r = b.needs_r ? require_r(c) : 0;
    const auto ns = n_values(c);
    const auto& backend = pick(b, c.method);
    const bool csv = c.format == "csv";
    if (csv) write_rational_csv_header(out);
    for (const unsigned n : ns) {
        require_path_length(b, n);
        if (c.check) cross_check(c, b, n, r);
        const Value v = backend(n, r);
        if (csv) {
            const long r_cell = b.needs_r ? static_cast<long>(r) : -1;
            if (const auto* q = std::get_if<ExactRational>(&v)) {
                write_rational_csv(out, c.quantity, n, r_cell, *q);
            } else {
                write_csv_row(out, {c.quantity, std::to_string(n), r_cell < 0 ? "" : std::to_string(r), "", "",
                                    format_double(as_double(v))});
            }
        } else if (ns.size() == 1) {
            out << human(v) << '\n';
        } else {
            out << fmt::format("n={}: {} ({:.12g})\n", n, human(v), as_double(v));
        }
    }
    return ok;
}

int cmd_figure(const RunConfig& c, std::ostream& out) {
    const bool branches = c.figure == "branches-fluctuation";
    const double x_min = c.x_min.value_or(branches ? 2.0 : 1.0);
    const double x_max = c.x_max.value_or(branches ? 5.0 : 4.0);
    if (!(x_min <= x_max) || x_min < 0.5) throw DomainError("figure x-range must satisfy 0.5 <= x-min <= x-max");
    const auto n_lo = static_cast<unsigned long>(std::ceil(std::pow(4.0, x_min) - 1e-9));
    const auto n_hi = static_cast<unsigned long>(std::floor(std::pow(4.0, x_max) + 1e-9));
    if (n_hi > figure_exact_cap) {
        throw ResourceCapError(fmt::format("figure needs exact values up to n={}, beyond the exact cap {}", n_hi,
                                           figure_exact_cap));
    }
    std::vector<unsigned long> grid;
    if (c.samples == 0) {
        for (auto n = n_lo; n <= n_hi; ++n) grid.push_back(n);
    } else {
        for (std::size_t i = 0; i < c.samples; ++i) {
            const double x = c.samples == 1 ? x_min : x_min + (x_max - x_min) * i / (c.samples - 1.0);
            const auto n = std::clamp(static_cast<unsigned long>(std::llround(std::pow(4.0, x))), n_lo, n_hi);
            if (grid.empty() || grid.back() != n) grid.push_back(n);
        }
    }
    struct Row {
        double x, exact, smooth, delta;
    };
    std::vector<Row> rows(grid.size());
    // Warm the coefficient cache before fanning out.
    fluctuation(branches ? FluctuationFamily::BranchesTotal : FluctuationFamily::FringeTotal, c.terms);
    parallel_for(grid.size(), resolve_threads(c.threads), [&](std::size_t i) {
        const unsigned long n = grid[i];
        const double x = log4(static_cast<double>(n));
        if (branches) {
            rows[i] = {x, expected_total_branches(static_cast<unsigned>(n)).to_double(),
                       asy_total_branches_smooth(n).value, delta_branches(x, c.terms)};
        } else {
            rows[i] = {x, expected_total_fringe(static_cast<unsigned>(n)).to_double(),
                       asy_total_fringe_smooth(n).value, delta_fringe(x, c.terms)};
        }
    });
    write_csv_row(out, {"x", "n", "exact", "asymptotic_smooth", "residual", "delta_fourier"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Row& row = rows[i];
        write_csv_row(out, {format_double(row.x), std::to_string(grid[i]), format_double(row.exact),
                            format_double(row.smooth), format_double(row.exact - row.smooth),
                            format_double(row.delta)});
    }
    return ok;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    VerifyOptions o;
    o.full = c.full;
    o.seed = c.seed;
    o.threads = resolve_threads(c.threads);
    if (c.fault == "rotation") {
        o.convention = ReductionConvention::identity_rotation();
    } else if (!c.fault.empty() && c.fault != "series") {
        throw UsageError("unknown fault '" + c.fault + "'");
    }
    const auto results = run_verify(o);
    print_verify_report(out, results);
    for (const auto& r : results) {
        if (!r.passed) return verify_failed;
    }
    return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Exact and asymptotic statistics of tree and lattice-path reductions", "redcalc"};
    app.require_subcommand(1);
    app.add_option("--threads", c.threads, "worker threads (default: REDCALC_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "random seed")->capture_default_str();
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"human", "csv"}));
    app.add_option("--out", c.out_path, "write output to FILE");
    app.add_option("--cap-trees", c.cap_trees, "largest tree size the oracle enumerates")->capture_default_str();
    app.add_option("--cap-paths", c.cap_paths, "largest path length the oracle enumerates")->capture_default_str();
    app.add_option("--inject-fault", c.fault)->group("");

    auto* tree = app.add_subcommand("tree", "reduce a tree, compute its register or branch counts")->fallthrough();
    tree->add_option("action", c.action)->required()->check(CLI::IsMember({"reduce", "register", "branches"}));
    tree->add_option("input", c.input, "tree literal such as \"((. .) .)\"");
    tree->add_option("--file", c.file, "one tree literal per line");

    auto* path = app.add_subcommand("path", "reduce a lattice path, its degree or fringe sizes")->fallthrough();
    path->add_option("action", c.action)->required()->check(CLI::IsMember({"reduce", "rdeg", "fringes"}));
    path->add_option("input", c.input, "path literal over URDL");
    path->add_option("--file", c.file, "one path literal per line");

    auto* table = app.add_subcommand("table", "tabulate exact or asymptotic quantities")->fallthrough();
    table
        ->add_option("quantity", c.quantity)
        ->required()
        ->check(CLI::IsMember({"r-branches-mean", "branches-total-mean", "rdeg-dist", "rdeg-mean", "fringe-mean",
                               "fringe-total-mean", "series-coefficients"}));
    table->add_option("--n", c.n, "size or length");
    table->add_option("--n-range", c.n_range, "inclusive range A:B");
    table->add_option("--r", c.r, "reduction depth");
    table->add_option("--order", c.order, "series order")->capture_default_str();
    table->add_option("--family", c.family, "series family for series-coefficients")->capture_default_str();
    table->add_option("--method", c.method)
        ->check(CLI::IsMember({"series", "exact", "oracle", "asymptotic"}))
        ->capture_default_str();
    table->add_flag("--check", c.check, "cross-check all exact backends");
    table->add_option("--terms", c.terms, "Fourier terms K")->capture_default_str()->check(CLI::PositiveNumber);

    auto* figure = app.add_subcommand("figure", "export residual and fluctuation data as CSV")->fallthrough();
    figure->add_option("name", c.figure)
        ->required()
        ->check(CLI::IsMember({"branches-fluctuation", "fringe-fluctuation"}));
    figure->add_option("--x-min", c.x_min, "smallest log4 n");
    figure->add_option("--x-max", c.x_max, "largest log4 n");
    figure->add_option("--terms", c.terms, "Fourier terms K")->capture_default_str()->check(CLI::PositiveNumber);
    figure->add_option("--samples", c.samples, "grid points (0: every integer n)")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the cross-validation suite")->fallthrough();
    auto* quick = verify->add_flag("--quick", c.quick, "small exhaustive ranges (default)");
    verify->add_flag("--full", c.full, "full exhaustive ranges")->excludes(quick);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : parse_error;
    }

    std::ofstream file;
    if (!c.out_path.empty()) {
        file.open(c.out_path);
        if (!file) {
            err << "error: cannot write '" << c.out_path << "'\n";
            return parse_error;
        }
    }
    std::ostream& sink = c.out_path.empty() ? out : file;
    try {
        if (*tree) return cmd_tree(c, sink);
        if (*path) return cmd_path(c, sink);
        if (*table) return cmd_table(c, sink);
        if (*figure) return cmd_figure(c, sink);
        return cmd_verify(c, sink);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return parse_error;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return domain_error;
    } catch (const MismatchError& e) {
        err << "mismatch: " << e.what() << '\n';
        return mismatch;
    } catch (const ExactnessError& e) {
        err << "mismatch: " << e.what() << '\n';
        return mismatch;
    } catch (const ResourceCapError& e) {
        err << "resource cap: " << e.what() << '\n';
        return resource_cap;
    }
}

} // namespace redcalc::cli
