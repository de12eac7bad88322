#ifndef NBPARSE_CONFIG_HPP
#define NBPARSE_CONFIG_HPP

#include <memory>
#include <string>
#include <vector>

#include "nbparse/transition.hpp"
#include "nbparse/tree.hpp"

namespace nbparse {

// Immutable record of how a stack item was built, shared across
// configurations so that applying a transition is cheap.
struct BuildNode {
    std::string label;      // empty for token leaves
    int token_index = -1;   // >= 0 for token leaves
    int head_child = -1;    // binary-system reduces record the head side
    std::vector<std::shared_ptr<const BuildNode>> children;

    bool is_token() const { return token_index >= 0; }
};

using BuildNodeRef = std::shared_ptr<const BuildNode>;

struct StackItem {
    std::string label;   // token items carry the word form
    int begin = 0;
    int end = 0;
    int level = 0;       // consecutive unary reductions used to build it
    bool token = false;
    BuildNodeRef node;

    Constituent constituent() const { return Constituent{label, begin, end, level}; }
    int arity() const { return node && !node->is_token() ? static_cast<int>(node->children.size()) : 0; }
};

// Parser state <stack, buffer index, finished, built set>. gamma holds the
// built nonterminal constituents; token constituents added by Shift are
// implicit (every word before buffer_index has been shifted exactly once).
struct Configuration {
    std::shared_ptr<const std::vector<Token>> sentence;
    std::vector<StackItem> stack;  // bottom first
    int buffer_index = 0;
    bool finished = false;
    Gamma gamma;
    std::vector<Transition> recent;  // last two actions, most recent last

    int length() const { return static_cast<int>(sentence->size()); }
    const Token& word(int i) const { return (*sentence)[i]; }
    bool buffer_empty() const { return buffer_index >= length(); }
    const StackItem& top() const { return stack.back(); }
};

// Initial configuration <[], 0, false, {}>. Throws on an empty sentence.
Configuration initial_configuration(std::vector<Token> sentence);
Configuration initial_configuration(std::shared_ptr<const std::vector<Token>> sentence);

// Left endpoints of the stack items, bottom to top.
std::vector<int> stack_left_endpoints(const Configuration& c);

// Verifies the structural invariants (spans tile (0, buffer_index), finished
// implies empty buffer). Returns an explanation or empty.
std::string check_invariants(const Configuration& c);

// Converts a finished stack item into a Tree (token leaves looked up in the
// sentence). The node must not be a bare token.
Tree build_node_to_tree(const BuildNode& node, const std::vector<Token>& sentence);

}  // namespace nbparse

#endif
