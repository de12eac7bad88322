#ifndef NBPARSE_TREEGEN_HPP
#define NBPARSE_TREEGEN_HPP

#include <random>
#include <string>
#include <vector>

#include "nbparse/tree.hpp"

namespace nbparse {

// Synthetic tree generation for audits, property tests and benchmarks.

struct RandomTreeParams {
    int min_len = 1;
    int max_len = 6;
    int max_arity = 4;
    std::vector<std::string> labels = {"A", "B", "C"};
    int unary_cap = 3;         // maximum unary level the tree may use
    double unary_prob = 0.2;   // chance of wrapping a node in one more unary
    std::vector<std::string> pos_tags = {"P", "Q"};
    // Word forms: distinct per position ("w0", "w1", ...) unless a prefix is given.
    std::string form_prefix = "w";
};

Tree random_tree(std::mt19937_64& rng, const RandomTreeParams& params);

// Right-branching binary tree over n words (for timing runs).
Tree right_branching_tree(int n, const std::string& label = "S");

// Exhaustive enumeration of trees over `n` words and the given labels.
// leaf_chain_max bounds the unary chain height over each word,
// extra_unary_max the number of stacked unaries over the root.
// Multi-word internal nodes otherwise branch into two or more children.
std::vector<Tree> enumerate_trees(int n, const std::vector<std::string>& labels,
                                  int leaf_chain_max, int extra_unary_max);

// First k upper-case letters, for audit label sets.
std::vector<std::string> default_labels(int k);

}  // namespace nbparse

#endif
