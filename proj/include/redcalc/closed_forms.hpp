#pragma once

#include "redcalc/rational.hpp"

#include <ostream>
#include <string_view>

namespace redcalc {

/// Expected number of r-branches in a random tree of size n.
ExactRational expected_r_branches(unsigned n, unsigned r);

/// Expected total number of branches in a random tree of size n.
ExactRational expected_total_branches(unsigned n);

/// Number of paths of length n (n >= 1) with reduction degree r.
BigInt count_paths_rdeg(unsigned n, unsigned r);

/// P(D_n = r) for a uniform path of length n.
ExactRational prob_rdeg(unsigned n, unsigned r);

/// Expected reduction degree of a uniform path of length n (normalized by 4^n).
ExactRational expected_rdeg(unsigned n);

/// Expected size of the r-th fringe of a uniform path of length n.
ExactRational expected_fringe(unsigned n, unsigned r);

/// Expected total fringe size of a uniform path of length n.
ExactRational expected_total_fringe(unsigned n);

/// Row "quantity,n,r,numerator,denominator,float64"; r < 0 leaves the r cell empty.
void write_rational_csv(std::ostream& out, std::string_view quantity, unsigned n, long r,
                        const ExactRational& value);
void write_rational_csv_header(std::ostream& out);

} // namespace redcalc
