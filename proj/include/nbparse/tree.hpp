#ifndef NBPARSE_TREE_HPP
#define NBPARSE_TREE_HPP

#include <map>
#include <string>
#include <vector>

namespace nbparse {

// A tagged word. POS tags come from the input; the parser never predicts them.
struct Token {
    std::string form;
    std::string pos;

    bool operator==(const Token& o) const { return form == o.form && pos == o.pos; }
    bool operator!=(const Token& o) const { return !(*this == o); }
};

// Constituency tree node. A node is either an internal node (nonterminal
// label, one or more children) or a token leaf. Preterminal brackets such as
// (DT The) are absorbed into the leaf's POS tag, so every Tree node carries a
// phrase label. Spans are word indices, end exclusive.
struct Tree {
    std::string label;            // empty on leaves
    Token token;                  // valid on leaves only
    std::vector<Tree> children;   // empty on leaves
    int begin = 0;
    int end = 0;
    // Index of the head child, set by binarization (-1 = unannotated).
    int head_child = -1;

    bool is_leaf() const { return children.empty(); }

    static Tree leaf(Token t) {
        Tree n;
        n.token = std::move(t);
        return n;
    }
    static Tree node(std::string label, std::vector<Tree> children) {
        Tree n;
        n.label = std::move(label);
        n.children = std::move(children);
        return n;
    }

    // Structural equality: labels, tokens, child order and head annotations.
    // Spans are derived data and do not participate.
    bool operator==(const Tree& o) const;
    bool operator!=(const Tree& o) const { return !(*this == o); }
};

// A labeled span. `level` disambiguates members of a same-span unary chain:
// it is the number of consecutive unary reductions used to build the
// constituent (0 for any node with two or more children).
struct Constituent {
    std::string label;
    int begin = 0;
    int end = 0;
    int level = 0;

    bool operator==(const Constituent& o) const {
        return begin == o.begin && end == o.end && level == o.level && label == o.label;
    }
    bool operator<(const Constituent& o) const {
        if (begin != o.begin) return begin < o.begin;
        if (end != o.end) return end < o.end;
        if (level != o.level) return level < o.level;
        return label < o.label;
    }
};

std::string to_string(const Constituent& c);

// Multiset of constituents, keyed by (label, begin, end, level).
using Gamma = std::map<Constituent, int>;

void gamma_add(Gamma& g, const Constituent& c);
bool gamma_contains(const Gamma& g, const Constituent& c);
std::size_t gamma_size(const Gamma& g);
// Size of (a \ b) as multisets.
std::size_t gamma_difference_size(const Gamma& a, const Gamma& b);
// True if every element of a occurs in b with at least the same multiplicity.
bool gamma_subset(const Gamma& a, const Gamma& b);

// Number of words under the node.
int tree_length(const Tree& t);

// Collects the tokens left to right.
std::vector<Token> tree_tokens(const Tree& t);

// Recomputes begin/end for all nodes, with the leftmost word at `start`.
void fix_spans(Tree& t, int start = 0);

// Unary level of a node: 0 if it has >= 2 children, otherwise 1 + the level
// of its single child (a token child counts as level 0).
int unary_level(const Tree& t);

// Maximum unary level over all nodes.
int max_unary_level(const Tree& t);

// One constituent per internal node; tokens are excluded. Spans must be
// current (see fix_spans).
Gamma decompose(const Tree& t);
std::size_t count_internal_nodes(const Tree& t);

// Checks labels, token forms, span consistency and the unary bound.
// Returns an explanation of the first violation, or empty if well formed.
std::string validate_tree(const Tree& t, int unary_cap);

// Drops head annotations everywhere (for comparisons against unannotated trees).
Tree strip_head_annotations(Tree t);

}  // namespace nbparse

#endif
