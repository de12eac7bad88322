#ifndef NBPARSE_BINARIZE_HPP
#define NBPARSE_BINARIZE_HPP

#include "nbparse/head_rules.hpp"
#include "nbparse/tree.hpp"

namespace nbparse {

// Head-outward binarization. For a node with more than two children the head
// child first absorbs its right siblings one at a time, then its left
// siblings, so the head stays innermost. Intermediate nodes carry the parent
// label suffixed with '*'; the outermost keeps the original label. Every
// binary node records which side its head is on via Tree::head_child; unary
// nodes are unchanged apart from head_child = 0.
Tree binarize(const Tree& tree, const HeadRuleTable& rules);

// Dissolves '*' nodes, splicing their children into the parent in order, and
// clears head annotations. unbinarize(binarize(t, r)) == t for any rule
// table. Throws std::runtime_error if the root itself is a '*' node.
Tree unbinarize(const Tree& tree);

bool is_auxiliary_label(const std::string& label);

}  // namespace nbparse

#endif
