#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace redcalc {

/// Unit step. The numbering makes clockwise rotation "+1 mod 4" and puts the
/// horizontal steps at odd values.
enum class Step : std::uint8_t { U = 0, R = 1, D = 2, L = 3 };

/// Diagonal step, produced when a horizontal-vertical segment is collapsed.
enum class Diagonal : std::uint8_t { NE = 0, SE = 1, SW = 2, NW = 3 };

inline Step rotate_clockwise(Step s) { return static_cast<Step>((static_cast<unsigned>(s) + 1) % 4); }
inline bool is_horizontal(Step s) { return (static_cast<unsigned>(s) & 1U) != 0; }
inline bool is_vertical(Step s) { return !is_horizontal(s); }

/// 45 degree clockwise rotation: NE->R, SE->D, SW->L, NW->U.
Step rotate_diagonal(Diagonal d);

char step_char(Step s);

/// Nonempty sequence of steps.
class LatticePath {
public:
    /// DomainError if `steps` is empty.
    explicit LatticePath(std::vector<Step> steps);

    std::size_t length() const { return steps_.size(); }
    std::span<const Step> steps() const { return steps_; }

    friend bool operator==(const LatticePath&, const LatticePath&) = default;

private:
    std::vector<Step> steps_;
};

/// Text over "URDL"; ParseError with offset on an empty string or a bad character.
LatticePath parse_path(std::string_view text);
std::string format_path(const LatticePath& path);

/// Rotation used by the two normalizing steps of the reduction. Only the
/// clockwise map is correct; other maps exist so the verification suite can
/// demonstrate that it catches a wrong convention.
struct ReductionConvention {
    std::array<Step, 4> rotate{Step::R, Step::D, Step::L, Step::U};

    static ReductionConvention standard() { return {}; }
    static ReductionConvention identity_rotation() { return {{Step::U, Step::R, Step::D, Step::L}}; }
};

/// Normalizes the orientation and collapses each maximal H+V+ segment.
/// DomainError for length < 2 or if the normalized path is not a sequence of
/// such segments (only possible under a non-standard convention).
std::vector<Diagonal> collapse_segments(const LatticePath& path,
                                        const ReductionConvention& convention = {});

/// The path reduction. DomainError for a single step.
LatticePath reduce_path(const LatticePath& path, const ReductionConvention& convention = {});

/// Allocation-light variant for scans: writes the reduction of `in` to `out`.
void reduce_steps(std::span<const Step> in, std::vector<Step>& out,
                  const ReductionConvention& convention = {});

/// Reduction degree: number of reductions until a single step remains.
unsigned rdeg(const LatticePath& path, const ReductionConvention& convention = {});

/// r-th fringe, or nullopt when the reduction degree is below r (size 0).
std::optional<LatticePath> fringe(const LatticePath& path, unsigned r);

/// Fringe sizes for r = 0..rdeg(path); entries beyond are 0.
std::vector<std::size_t> fringe_sizes(const LatticePath& path,
                                      const ReductionConvention& convention = {});

/// Path of length n with reduction degree floor(log2 n).
LatticePath extremal_path(std::size_t n);

} // namespace redcalc
