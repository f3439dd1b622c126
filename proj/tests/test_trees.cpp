#include "oracles.hpp"

#include "redcalc/enumeration.hpp"
#include "redcalc/errors.hpp"
#include "redcalc/rational.hpp"
#include "redcalc/trees.hpp"

#include <doctest.h>

using namespace redcalc;

namespace {

const char* const colored_tree = "(( . ((( . .) ( . .)) .)) ((( . ( . .)) (( . .) .)) ( . .)))";

std::string canonical(std::string_view s) { return format_tree(parse_tree(s)); }

unsigned floor_log2(unsigned long long x) { return static_cast<unsigned>(std::bit_width(x) - 1); }

} // namespace

TEST_SUITE("trees") {

TEST_CASE("parse and format") {
    CHECK(parse_tree(".").is_leaf());
    const BinaryTree one = parse_tree("(. .)");
    CHECK(one.size() == 1);
    CHECK(one == BinaryTree::node(BinaryTree::leaf(), BinaryTree::leaf()));
    const BinaryTree b3 = parse_tree("((. .) .)");
    CHECK(b3.size() == 2);
    CHECK(b3 == almost_complete(3));
    CHECK(canonical("( (.   .)\t. )") == "((. .) .)");
    CHECK(parse_tree(colored_tree).size() == 13);
}

TEST_CASE("parse errors carry offsets") {
    const auto offset_of = [](std::string_view s) -> std::size_t {
        try {
            parse_tree(s);
        } catch (const ParseError& e) {
            return e.offset();
        }
        return std::string::npos;
    };
    CHECK(offset_of("") == 0);
    CHECK(offset_of("(. x)") == 3);
    CHECK(offset_of("(. .") == 4);
    CHECK(offset_of(". .") == 2);
    CHECK(offset_of("(. . .)") == 5);
    CHECK_THROWS_AS(parse_tree(")"), ParseError);
}

TEST_CASE("reduce examples") {
    CHECK(reduce_tree(parse_tree("(. .)")).is_leaf());
    CHECK(reduce_tree(parse_tree("((. .) .)")).is_leaf());
    CHECK(reduce_tree(almost_complete(6)) == almost_complete(3));
    CHECK(format_tree(reduce_tree(parse_tree("((. .) (. .))"))) == "(. .)");
    CHECK_THROWS_AS(reduce_tree(BinaryTree::leaf()), DomainError);
}

TEST_CASE("register examples") {
    CHECK(register_function(BinaryTree::leaf()) == 0);
    CHECK(register_function(parse_tree("(. .)")) == 1);
    CHECK(register_function(parse_tree(colored_tree)) == 3);
    CHECK(register_by_reduction(BinaryTree::leaf()) == 0);
    CHECK(register_by_reduction(parse_tree("((. .) (. .))")) == 2);
    CHECK(register_by_reduction(parse_tree(colored_tree)) == 3);
}

TEST_CASE("branch count examples") {
    CHECK(branch_counts(BinaryTree::leaf()).counts == std::vector<std::uint64_t>{1});
    const BranchCounts one = branch_counts(parse_tree("(. .)"));
    CHECK(one.counts == std::vector<std::uint64_t>{2, 1});
    CHECK(one.total == 3);
    const BranchCounts fig = branch_counts(parse_tree(colored_tree));
    CHECK(fig.counts == std::vector<std::uint64_t>{14, 5, 2, 1});
    CHECK(fig.total == 22);
    const auto expected = oracle::branches(*oracle::build(parse_tree(colored_tree)));
    CHECK(expected == std::vector<unsigned long>{14, 5, 2, 1});
}

TEST_CASE("almost complete and chains") {
    CHECK(almost_complete(1).is_leaf());
    CHECK(format_tree(almost_complete(3)) == "((. .) .)");
    CHECK(almost_complete(6).size() == 5);
    CHECK(format_tree(almost_complete(6)) == "(((. .) (. .)) (. .))");
    CHECK_THROWS_AS(almost_complete(0), DomainError);

    CHECK(format_tree(chain_tree(1, 7)) == "(. .)");
    const BranchCounts c3 = branch_counts(chain_tree(3, 0));
    CHECK(chain_tree(3, 0).size() == 3);
    CHECK(c3.total == 5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(register_function(chain_tree(10, seed)) == 1);
    CHECK(chain_tree(10, 1) == chain_tree(10, 1));
    CHECK_THROWS_AS(chain_tree(0, 0), DomainError);
}

TEST_CASE("labels follow the recursive rule") {
    const BranchLabeling lab = label_branches(parse_tree(colored_tree));
    const auto shape = lab.tree.preorder();
    const auto span = subtree_spans(shape);
    CHECK(lab.labels[0] == 3);
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (!shape[i]) {
            CHECK(lab.labels[i] == 0);
            continue;
        }
        const unsigned a = lab.labels[i + 1];
        const unsigned b = lab.labels[i + 1 + span[i + 1]];
        CHECK(lab.labels[i] == (a == b ? a + 1 : std::max(a, b)));
    }
}

TEST_CASE("exhaustive agreement with naive recursion, n <= 12") {
    for (unsigned n = 0; n <= 12; ++n) {
        std::size_t mismatches = 0;
        for_each_tree(n, [&](const BinaryTree& t) {
            const unsigned reg = register_function(t);
            if (reg != register_by_reduction(t)) ++mismatches;
            if (!t.is_leaf() && register_function(reduce_tree(t)) + 1 != reg) ++mismatches;
            if (format_tree(parse_tree(format_tree(t))) != format_tree(t)) ++mismatches;
            const BranchCounts bc = branch_counts(t);
            if (bc.counts[0] != n + 1 || bc.counts[reg] != 1) ++mismatches;
            if (n <= 9) {
                const auto node = oracle::build(t);
                if (oracle::reg(*node) != reg) ++mismatches;
                if (!t.is_leaf() && oracle::print(*oracle::reduce(*node)) != format_tree(reduce_tree(t))) {
                    ++mismatches;
                }
                const auto ob = oracle::branches(*node);
                if (!std::equal(ob.begin(), ob.end(), bc.counts.begin(), bc.counts.end())) ++mismatches;
            }
        });
        CHECK_MESSAGE(mismatches == 0, "n=" << n);
    }
}

TEST_CASE("branch count bounds hold and are sharp, n <= 11") {
    for (unsigned n = 1; n <= 11; ++n) {
        const unsigned top = floor_log2(n + 1);
        std::vector<std::uint64_t> lo(top + 1, ~0ULL), hi(top + 1, 0);
        std::uint64_t total_lo = ~0ULL, total_hi = 0;
        bool within = true;
        for_each_tree(n, [&](const BinaryTree& t) {
            const BranchCounts bc = branch_counts(t);
            for (unsigned r = 1; r <= top; ++r) {
                const std::uint64_t c = bc.at(r);
                within = within && c >= (r == 1 ? 1u : 0u) && c <= ((n + 1ULL) >> r);
                lo[r] = std::min(lo[r], c);
                hi[r] = std::max(hi[r], c);
            }
            total_lo = std::min(total_lo, bc.total);
            total_hi = std::max(total_hi, bc.total);
        });
        CHECK(within);
        for (unsigned r = 1; r <= top; ++r) {
            CHECK(lo[r] == (r == 1 ? 1u : 0u));
            CHECK(hi[r] == ((n + 1ULL) >> r));
        }
        CHECK(total_lo == n + 2);
        CHECK(total_hi == 2ULL * n + 2 - binary_weight(n + 1));
    }
}

TEST_CASE("extremal families up to 4096") {
    for (std::size_t m = 2; m <= 4096; ++m) {
        const BinaryTree b = almost_complete(m);
        REQUIRE(b.leaves() == m);
        CHECK(reduce_tree(b) == almost_complete(m / 2));
        const BranchCounts bc = branch_counts(b);
        for (unsigned r = 0; r < bc.counts.size() + 2; ++r) CHECK(bc.at(r) == (m >> r));
    }
    for (std::size_t n = 1; n <= 300; ++n) CHECK(branch_counts(chain_tree(n, n)).total == n + 2);
}

TEST_CASE("deep trees do not overflow") {
    const std::size_t n = 1'000'000;
    const BinaryTree chain = chain_tree(n, 3);
    CHECK(chain.size() == n);
    CHECK(register_function(chain) == 1);
    CHECK(branch_counts(chain).total == n + 2);
    CHECK(reduce_tree(chain).is_leaf());
    CHECK(parse_tree(format_tree(chain)) == chain);
    // A left comb: every left child internal.
    std::vector<std::uint8_t> comb(n, 1);
    comb.insert(comb.end(), n + 1, 0);
    const BinaryTree left_comb = BinaryTree::from_preorder(comb);
    CHECK(register_by_reduction(left_comb) == 1);
}

TEST_CASE("shape word validation") {
    CHECK_THROWS_AS(BinaryTree::from_preorder({1, 0}), DomainError);
    CHECK_THROWS_AS(BinaryTree::from_preorder({0, 0}), DomainError);
    CHECK_THROWS_AS(BinaryTree::from_preorder({2}), DomainError);
    const BinaryTree t = parse_tree("((. .) .)");
    CHECK(format_tree(t.left()) == "(. .)");
    CHECK(t.right().is_leaf());
    CHECK_THROWS_AS(BinaryTree::leaf().left(), DomainError);
}

} // TEST_SUITE
