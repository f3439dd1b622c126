#include "redcalc/paths.hpp"

#include "redcalc/errors.hpp"

#include <bit>

namespace redcalc {

namespace {

Step rotated(Step s, const ReductionConvention& c) { return c.rotate[static_cast<unsigned>(s)]; }

Diagonal collapse(Step h, Step v) {
    if (h == Step::R) return v == Step::U ? Diagonal::NE : Diagonal::SE;
    return v == Step::D ? Diagonal::SW : Diagonal::NW;
}

// Normalizes `in` into `work` and calls emit(d) once per segment.
template <class Emit>
void for_each_segment(std::span<const Step> in, std::vector<Step>& work,
                      const ReductionConvention& convention, Emit&& emit) {
    if (in.size() < 2) {
        throw DomainError("a single step cannot be reduced");
    }
    work.assign(in.begin(), in.end());
    if (is_vertical(work.front())) {
        for (auto& s : work) s = rotated(s, convention);
    }
    if (is_horizontal(work.back())) {
        work.back() = rotated(work.back(), convention);
    }
    const std::size_t n = work.size();
    std::size_t i = 0;
    while (i < n) {
        const Step h = work[i];
        if (!is_horizontal(h)) {
            throw DomainError("normalized path does not split into horizontal-vertical segments (step " +
                              std::to_string(i) + ")");
        }
        while (i < n && is_horizontal(work[i])) ++i;
        if (i == n) {
            throw DomainError("normalized path ends with a horizontal step");
        }
        const Step v = work[i];
        while (i < n && is_vertical(work[i])) ++i;
        emit(collapse(h, v));
    }
}

} // namespace

Step rotate_diagonal(Diagonal d) {
    switch (d) {
    case Diagonal::NE: return Step::R;
    case Diagonal::SE: return Step::D;
    case Diagonal::SW: return Step::L;
    case Diagonal::NW: return Step::U;
    }
    return Step::U;
}

char step_char(Step s) { return "URDL"[static_cast<unsigned>(s)]; }

LatticePath::LatticePath(std::vector<Step> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) {
        throw DomainError("a lattice path has at least one step");
    }
}

LatticePath parse_path(std::string_view text) {
    if (text.empty()) {
        throw ParseError("empty path", 0);
    }
    std::vector<Step> steps;
    steps.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        switch (text[i]) {
        case 'U': steps.push_back(Step::U); break;
        case 'R': steps.push_back(Step::R); break;
        case 'D': steps.push_back(Step::D); break;
        case 'L': steps.push_back(Step::L); break;
        default: throw ParseError(std::string("bad step character '") + text[i] + "'", i);
        }
    }
    return LatticePath(std::move(steps));
}

std::string format_path(const LatticePath& path) {
    std::string out;
    out.reserve(path.length());
    for (const Step s : path.steps()) out.push_back(step_char(s));
    return out;
}

std::vector<Diagonal> collapse_segments(const LatticePath& path, const ReductionConvention& convention) {
    std::vector<Step> work;
    std::vector<Diagonal> out;
    for_each_segment(path.steps(), work, convention, [&](Diagonal d) { out.push_back(d); });
    return out;
}

void reduce_steps(std::span<const Step> in, std::vector<Step>& out, const ReductionConvention& convention) {
    thread_local std::vector<Step> work;
    out.clear();
    for_each_segment(in, work, convention, [&](Diagonal d) { out.push_back(rotate_diagonal(d)); });
}

LatticePath reduce_path(const LatticePath& path, const ReductionConvention& convention) {
    std::vector<Step> out;
    reduce_steps(path.steps(), out, convention);
    return LatticePath(std::move(out));
}

unsigned rdeg(const LatticePath& path, const ReductionConvention& convention) {
    return static_cast<unsigned>(fringe_sizes(path, convention).size() - 1);
}

std::optional<LatticePath> fringe(const LatticePath& path, unsigned r) {
    LatticePath current = path;
    for (unsigned i = 0; i < r; ++i) {
        if (current.length() < 2) return std::nullopt;
        current = reduce_path(current);
    }
    return current;
}

std::vector<std::size_t> fringe_sizes(const LatticePath& path, const ReductionConvention& convention) {
    std::vector<std::size_t> sizes{path.length()};
    std::vector<Step> a(path.steps().begin(), path.steps().end());
    std::vector<Step> b;
    while (a.size() > 1) {
        reduce_steps(a, b, convention);
        sizes.push_back(b.size());
        a.swap(b);
    }
    return sizes;
}

LatticePath extremal_path(std::size_t n) {
    if (n == 0) {
        throw DomainError("extremal path needs length at least 1");
    }
    // Inverse of one collapse: the segment (h, v) that reduces to the step.
    auto horizontal_of = [](Step s) { return s == Step::R || s == Step::D ? Step::R : Step::L; };
    auto vertical_of = [](Step s) { return s == Step::R || s == Step::U ? Step::U : Step::D; };

    std::vector<Step> path{Step::R};
    const int top = std::bit_width(n) - 1;
    for (int bit = top - 1; bit >= 0; --bit) {
        const bool one = ((n >> bit) & 1U) != 0;
        std::vector<Step> next;
        next.reserve(2 * path.size() + 1);
        for (std::size_t i = 0; i < path.size(); ++i) {
            const Step h = horizontal_of(path[i]);
            next.push_back(h);
            if (one && i == 0) next.push_back(h);
            next.push_back(vertical_of(path[i]));
        }
        path.swap(next);
    }
    return LatticePath(std::move(path));
}

} // namespace redcalc
