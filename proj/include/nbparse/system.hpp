#ifndef NBPARSE_SYSTEM_HPP
#define NBPARSE_SYSTEM_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nbparse/config.hpp"
#include "nbparse/transition.hpp"
#include "nbparse/tree.hpp"

namespace nbparse {

enum class SystemKind { nonbinary, binary };

std::string to_string(SystemKind k);
SystemKind system_from_string(const std::string& s);

// Which reduce transitions are available. The structural rules (stack sizes,
// buffer exhaustion, the unary cap) live in the transition system itself;
// the inventory narrows the reduce labels/arities on top of them. With
// any_arity set, a known label may reduce any number of items, which is how
// exploration-time legality is kept complete while decoding stays restricted
// to observed (label, arity) pairs.
struct Inventory {
    SystemKind system = SystemKind::nonbinary;
    int unary_cap = 3;
    bool any_arity = false;

    std::set<std::pair<std::string, int>> reduce_pairs;  // non-binary (label, arity)
    std::set<std::string> labels;                        // non-binary label set
    std::set<std::string> left_labels;                   // binary Reduce-Left
    std::set<std::string> right_labels;                  // binary Reduce-Right
    std::set<std::string> unary_labels;                  // binary Reduce-Unary

    void add(const Transition& t);
    bool allows(const Transition& t) const;
    // Inventory with the same labels but all arities allowed.
    Inventory with_any_arity() const;
    // Every registered reduce transition, in canonical order.
    std::vector<Transition> reduce_transitions() const;
};

class IllegalTransition : public std::runtime_error {
  public:
    explicit IllegalTransition(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact legality: structural side conditions plus inventory membership.
// Never throws; illegal means false.
bool legal(const Configuration& c, const Transition& t, const Inventory& inv);

// All transitions legal in c, in canonical order.
std::vector<Transition> legal_transitions(const Configuration& c, const Inventory& inv);

// Applies the rewrite. Structural preconditions are enforced and violations
// throw IllegalTransition naming the failed condition; inventory membership
// is the caller's business.
Configuration apply(const Configuration& c, const Transition& t);

bool is_terminal(const Configuration& c);

// Gold transition sequence for the non-binary system: a post-order traversal
// emitting Shift per word and Reduce-X#k per internal node, ending in Finish.
// Replaying it reconstructs the tree; length is n + |N| + 1.
std::vector<Transition> static_oracle_nonbinary(const Tree& tree);

// Gold sequence for the binary baseline. The tree must be binarized with
// head annotations (see binarize); throws on nodes with more than two
// children or missing annotations.
std::vector<Transition> static_oracle_binary(const Tree& tree);

// Number of transitions the non-binary system needs for this tree.
std::size_t count_transitions(const Tree& tree);

// The tree held by a terminal configuration with a single stack item.
// Throws on non-terminal configurations or a bare-token stack.
Tree extract_tree(const Configuration& c);

Configuration replay(const std::vector<Token>& sentence, const std::vector<Transition>& seq);

}  // namespace nbparse

#endif
