#ifndef NBPARSE_TRANSITION_HPP
#define NBPARSE_TRANSITION_HPP

#include <cstdint>
#include <string>

namespace nbparse {

// One parser action. The reduce kinds split by system: `reduce` is the
// non-binary Reduce-X#k; the remaining reduce kinds belong to the binary
// bottom-up baseline. Reduce-Left-X makes the right child the head,
// Reduce-Right-X the left child (arc-direction naming).
enum class TransitionKind : std::uint8_t {
    shift,
    reduce,         // non-binary, with label and arity
    reduce_left,    // binary, head = right child
    reduce_right,   // binary, head = left child
    reduce_unary,   // binary
    finish,
};

struct Transition {
    TransitionKind kind = TransitionKind::shift;
    std::string label;
    int arity = 0;  // only for kind == reduce

    static Transition shift() { return {TransitionKind::shift, "", 0}; }
    static Transition reduce(std::string label, int arity) {
        return {TransitionKind::reduce, std::move(label), arity};
    }
    static Transition reduce_left(std::string label) {
        return {TransitionKind::reduce_left, std::move(label), 0};
    }
    static Transition reduce_right(std::string label) {
        return {TransitionKind::reduce_right, std::move(label), 0};
    }
    static Transition reduce_unary(std::string label) {
        return {TransitionKind::reduce_unary, std::move(label), 0};
    }
    static Transition finish() { return {TransitionKind::finish, "", 0}; }

    bool is_reduce() const {
        return kind != TransitionKind::shift && kind != TransitionKind::finish;
    }

    bool operator==(const Transition& o) const {
        return kind == o.kind && arity == o.arity && label == o.label;
    }
    bool operator!=(const Transition& o) const { return !(*this == o); }
    // Canonical order used for deterministic tie-breaking:
    // Shift < reduces ordered by (label, arity, kind) < Finish.
    bool operator<(const Transition& o) const;
};

// Serialization: SHIFT, REDUCE-<LABEL>#<k>, REDUCE-LEFT-<LABEL>,
// REDUCE-RIGHT-<LABEL>, REDUCE-UNARY-<LABEL>, FINISH.
std::string to_string(const Transition& t);
Transition transition_from_string(const std::string& s);

}  // namespace nbparse

#endif
