#include "redcalc/trees.hpp"

#include "redcalc/errors.hpp"
#include "redcalc/random.hpp"

#include <algorithm>
#include <cctype>

namespace redcalc {

namespace {

// Length of the complete subtree word starting at `start`.
std::size_t span_from(std::span<const std::uint8_t> shape, std::size_t start) {
    std::size_t pending = 1;
    std::size_t i = start;
    while (pending > 0) {
        pending += shape[i] ? 1 : 0;
        pending -= shape[i] ? 0 : 1;
        ++i;
    }
    return i - start;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

} // namespace

BinaryTree BinaryTree::node(const BinaryTree& left, const BinaryTree& right) {
    std::vector<std::uint8_t> shape;
    shape.reserve(1 + left.shape_.size() + right.shape_.size());
    shape.push_back(1);
    shape.insert(shape.end(), left.shape_.begin(), left.shape_.end());
    shape.insert(shape.end(), right.shape_.begin(), right.shape_.end());
    return BinaryTree(Unchecked{}, std::move(shape));
}

BinaryTree BinaryTree::from_preorder(std::vector<std::uint8_t> shape) {
    std::size_t pending = 1;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (pending == 0 || shape[i] > 1) {
            throw DomainError("not a binary tree shape word (position " + std::to_string(i) + ")");
        }
        if (shape[i]) {
            ++pending;
        } else {
            --pending;
        }
    }
    if (pending != 0) {
        throw DomainError("incomplete binary tree shape word");
    }
    return BinaryTree(Unchecked{}, std::move(shape));
}

BinaryTree BinaryTree::left() const {
    if (is_leaf()) throw DomainError("a leaf has no subtrees");
    const std::size_t len = span_from(shape_, 1);
    return BinaryTree(Unchecked{}, {shape_.begin() + 1, shape_.begin() + 1 + static_cast<std::ptrdiff_t>(len)});
}

BinaryTree BinaryTree::right() const {
    if (is_leaf()) throw DomainError("a leaf has no subtrees");
    const std::size_t len = span_from(shape_, 1);
    return BinaryTree(Unchecked{}, {shape_.begin() + 1 + static_cast<std::ptrdiff_t>(len), shape_.end()});
}

BinaryTree parse_tree(std::string_view text) {
    std::vector<std::uint8_t> shape;
    std::vector<std::uint8_t> open;  // children still expected per open '('
    bool expect_tree = true;
    bool done = false;
    std::size_t pos = 0;

    auto complete_child = [&] {
        if (open.empty()) {
            done = true;
            return;
        }
        --open.back();
        expect_tree = open.back() != 0;
    };

    while (!done) {
        while (pos < text.size() && is_space(text[pos])) ++pos;
        if (pos == text.size()) {
            throw ParseError("unexpected end of tree literal", pos);
        }
        const char c = text[pos];
        if (expect_tree) {
            if (c == '.') {
                shape.push_back(0);
                complete_child();
            } else if (c == '(') {
                shape.push_back(1);
                open.push_back(2);
            } else {
                throw ParseError(std::string("expected '.' or '(' but found '") + c + "'", pos);
            }
        } else if (c == ')') {
            open.pop_back();
            complete_child();
        } else {
            throw ParseError(std::string("expected ')' but found '") + c + "'", pos);
        }
        ++pos;
    }
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos != text.size()) {
        throw ParseError("trailing characters after tree literal", pos);
    }
    return BinaryTree::from_preorder(std::move(shape));
}

std::string format_tree(const BinaryTree& tree) {
    const auto shape = tree.preorder();
    std::string out;
    out.reserve(shape.size() * 2);
    std::vector<std::uint8_t> open;
    for (const std::uint8_t symbol : shape) {
        if (symbol) {
            out.push_back('(');
            open.push_back(2);
            continue;
        }
        out.push_back('.');
        while (!open.empty()) {
            if (--open.back() == 1) {
                out.push_back(' ');
                break;
            }
            out.push_back(')');
            open.pop_back();
        }
    }
    return out;
}

std::vector<std::size_t> subtree_spans(std::span<const std::uint8_t> shape) {
    std::vector<std::size_t> span(shape.size(), 1);
    for (std::size_t i = shape.size(); i-- > 0;) {
        if (shape[i]) {
            const std::size_t left = i + 1;
            const std::size_t right = left + span[left];
            span[i] = 1 + span[left] + span[right];
        }
    }
    return span;
}

BinaryTree reduce_tree(const BinaryTree& tree) {
    if (tree.is_leaf()) {
        throw DomainError("reduction of a single leaf is undefined");
    }
    const auto shape = tree.preorder();
    const auto span = subtree_spans(shape);
    std::vector<std::uint8_t> reduced;
    reduced.reserve(shape.size() / 2);
    // Leaves are erased. An internal node survives as a leaf when both children
    // were leaves, is merged away when exactly one child was a leaf, and stays
    // internal otherwise. Preorder of the survivors is the reduced tree.
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (!shape[i]) continue;
        const std::size_t left = i + 1;
        const std::size_t right = left + span[left];
        const int leaf_children = (shape[left] ? 0 : 1) + (shape[right] ? 0 : 1);
        if (leaf_children == 2) {
            reduced.push_back(0);
        } else if (leaf_children == 0) {
            reduced.push_back(1);
        }
    }
    return BinaryTree::from_preorder(std::move(reduced));
}

BranchLabeling label_branches(const BinaryTree& tree) {
    const auto shape = tree.preorder();
    const auto span = subtree_spans(shape);
    std::vector<unsigned> labels(shape.size(), 0);
    for (std::size_t i = shape.size(); i-- > 0;) {
        if (!shape[i]) continue;
        const unsigned a = labels[i + 1];
        const unsigned b = labels[i + 1 + span[i + 1]];
        labels[i] = a == b ? a + 1 : std::max(a, b);
    }
    return {tree, std::move(labels)};
}

unsigned register_function(const BinaryTree& tree) {
    const auto shape = tree.preorder();
    // Reverse preorder: a node's two child values are on top of the stack.
    std::vector<unsigned> stack;
    stack.reserve(64);
    for (std::size_t i = shape.size(); i-- > 0;) {
        if (!shape[i]) {
            stack.push_back(0);
            continue;
        }
        const unsigned a = stack.back();
        stack.pop_back();
        const unsigned b = stack.back();
        stack.back() = a == b ? a + 1 : std::max(a, b);
    }
    return stack.back();
}

unsigned register_by_reduction(const BinaryTree& tree) {
    unsigned steps = 0;
    BinaryTree current = tree;
    while (!current.is_leaf()) {
        current = reduce_tree(current);
        ++steps;
    }
    return steps;
}

BranchCounts branch_counts(const BinaryTree& tree) {
    const auto shape = tree.preorder();
    const auto span = subtree_spans(shape);
    const BranchLabeling labeling = label_branches(tree);
    const auto& label = labeling.labels;

    BranchCounts result;
    result.counts.assign(label[0] + 1, 0);
    ++result.counts[label[0]];
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (!shape[i]) continue;
        for (const std::size_t child : {i + 1, i + 1 + span[i + 1]}) {
            if (label[child] != label[i]) ++result.counts[label[child]];
        }
    }
    for (const auto c : result.counts) result.total += c;
    return result;
}

BinaryTree almost_complete(std::size_t leaves) {
    if (leaves == 0) {
        throw DomainError("almost complete tree needs at least one leaf");
    }
    // Heap numbering 1..2m-1; node i is internal iff it has children 2i, 2i+1.
    std::vector<std::uint8_t> shape;
    shape.reserve(2 * leaves - 1);
    std::vector<std::uint64_t> stack{1};
    while (!stack.empty()) {
        const std::uint64_t i = stack.back();
        stack.pop_back();
        if (i < leaves) {
            shape.push_back(1);
            stack.push_back(2 * i + 1);
            stack.push_back(2 * i);
        } else {
            shape.push_back(0);
        }
    }
    return BinaryTree::from_preorder(std::move(shape));
}

BinaryTree chain_tree(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw DomainError("chain needs at least one internal node");
    }
    SeededGenerator gen(seed);
    std::vector<std::uint8_t> shape;
    shape.reserve(2 * n + 1);
    std::size_t deferred_leaves = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        shape.push_back(1);
        if (gen.coin()) {
            shape.push_back(0);  // leaf on the left, chain continues right
        } else {
            ++deferred_leaves;  // chain continues left, leaf closes the node later
        }
    }
    shape.insert(shape.end(), {1, 0, 0});
    shape.insert(shape.end(), deferred_leaves, 0);
    return BinaryTree::from_preorder(std::move(shape));
}

} // namespace redcalc
