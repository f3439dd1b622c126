#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace redcalc {

/// Immutable binary tree: either a leaf or an internal node with two subtrees.
///
/// Stored as its preorder shape word (1 = internal node, 0 = leaf), so a tree of
/// size n occupies 2n+1 bytes and all algorithms below are iterative. Trees are
/// plain values; copies are independent and equality is structural.
class BinaryTree {
public:
    /// The single leaf.
    BinaryTree() : shape_{0} {}

    static BinaryTree leaf() { return BinaryTree(); }
    static BinaryTree node(const BinaryTree& left, const BinaryTree& right);

    /// Builds a tree from a preorder shape word; throws DomainError if the word
    /// is not a complete binary tree.
    static BinaryTree from_preorder(std::vector<std::uint8_t> shape);

    bool is_leaf() const { return shape_.size() == 1; }
    /// Number of internal nodes.
    std::size_t size() const { return shape_.size() / 2; }
    std::size_t leaves() const { return size() + 1; }

    /// Subtrees of an internal node (DomainError on a leaf).
    BinaryTree left() const;
    BinaryTree right() const;

    std::span<const std::uint8_t> preorder() const { return shape_; }

    friend bool operator==(const BinaryTree&, const BinaryTree&) = default;
    friend auto operator<=>(const BinaryTree&, const BinaryTree&) = default;

private:
    struct Unchecked {};
    BinaryTree(Unchecked, std::vector<std::uint8_t> shape) : shape_(std::move(shape)) {}

    std::vector<std::uint8_t> shape_;
};

/// Parses "." | "(" T " " T ")". Whitespace between tokens is tolerated; the
/// canonical form produced by format_tree uses exactly one space separator.
BinaryTree parse_tree(std::string_view text);
std::string format_tree(const BinaryTree& tree);

/// Subtree extent (in shape-word positions) for every preorder position.
std::vector<std::size_t> subtree_spans(std::span<const std::uint8_t> shape);

/// Tree reduction: erase all leaves, then merge every node left with a single
/// child into that child. Nodes without children become leaves.
/// Throws DomainError on a leaf.
BinaryTree reduce_tree(const BinaryTree& tree);

/// Register function (Horton-Strahler number).
unsigned register_function(const BinaryTree& tree);

/// Number of reductions needed to reach the leaf.
unsigned register_by_reduction(const BinaryTree& tree);

/// Register value of the subtree rooted at each node, in preorder.
struct BranchLabeling {
    BinaryTree tree;
    std::vector<unsigned> labels;
};

BranchLabeling label_branches(const BinaryTree& tree);

/// counts[r] = number of r-branches (maximal chains of nodes labeled r).
struct BranchCounts {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    std::uint64_t at(std::size_t r) const { return r < counts.size() ? counts[r] : 0; }
};

BranchCounts branch_counts(const BinaryTree& tree);

/// Almost complete tree with `leaves` leaves, filled level by level, left to right.
BinaryTree almost_complete(std::size_t leaves);

/// A chain of n internal nodes: every internal node has at least one leaf child.
/// The side carrying the continuation is drawn from a seeded stream.
BinaryTree chain_tree(std::size_t n, std::uint64_t seed);

} // namespace redcalc
