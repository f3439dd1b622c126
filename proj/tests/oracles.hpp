#pragma once

// Deliberately naive reference implementations, independent of the library's
// iterative algorithms. Only for small inputs.

#include "redcalc/paths.hpp"
#include "redcalc/trees.hpp"

#include <memory>
#include <string>
#include <vector>

namespace oracle {

struct Node {
    std::unique_ptr<Node> left;
    std::unique_ptr<Node> right;
    bool leaf() const { return !left; }
};

std::unique_ptr<Node> build(const redcalc::BinaryTree& t);
std::string print(const Node& n);

/// Recursive max/+1 rule.
unsigned reg(const Node& n);

/// Erase leaves, then splice out nodes with one child; recursive.
std::unique_ptr<Node> reduce(const Node& n);

/// Branch counts by walking maximal chains: a node heads an r-branch when its
/// parent has a different register (or it is the root).
std::vector<unsigned long> branches(const Node& n);

/// Path reduction following the textual recipe on a character string.
std::string reduce_path(const std::string& p);
unsigned rdeg(std::string p);

/// All trees of size n, built recursively.
std::vector<std::unique_ptr<Node>> all_trees(unsigned n);

} // namespace oracle
