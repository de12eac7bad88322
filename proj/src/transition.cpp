#include "nbparse/transition.hpp"

#include <stdexcept>
#include <tuple>

namespace nbparse {

namespace {

int kind_rank(TransitionKind k) {
    switch (k) {
        case TransitionKind::shift: return 0;
        case TransitionKind::reduce:
        case TransitionKind::reduce_left:
        case TransitionKind::reduce_right:
        case TransitionKind::reduce_unary: return 1;
        case TransitionKind::finish: return 2;
    }
    return 3;
}

}  // namespace

bool Transition::operator<(const Transition& o) const {
    int a = kind_rank(kind), b = kind_rank(o.kind);
    if (a != b) return a < b;
    return std::tie(label, arity, kind) < std::tie(o.label, o.arity, o.kind);
}

std::string to_string(const Transition& t) {
    switch (t.kind) {
        case TransitionKind::shift: return "SHIFT";
        case TransitionKind::reduce: return "REDUCE-" + t.label + "#" + std::to_string(t.arity);
        case TransitionKind::reduce_left: return "REDUCE-LEFT-" + t.label;
        case TransitionKind::reduce_right: return "REDUCE-RIGHT-" + t.label;
        case TransitionKind::reduce_unary: return "REDUCE-UNARY-" + t.label;
        case TransitionKind::finish: return "FINISH";
    }
    throw std::logic_error("unknown transition kind");
}

Transition transition_from_string(const std::string& s) {
    if (s == "SHIFT") return Transition::shift();
    if (s == "FINISH") return Transition::finish();
    auto tail = [&s](std::size_t prefix) { return s.substr(prefix); };
    if (s.rfind("REDUCE-LEFT-", 0) == 0) return Transition::reduce_left(tail(12));
    if (s.rfind("REDUCE-RIGHT-", 0) == 0) return Transition::reduce_right(tail(13));
    if (s.rfind("REDUCE-UNARY-", 0) == 0) return Transition::reduce_unary(tail(13));
    if (s.rfind("REDUCE-", 0) == 0) {
        std::size_t hash = s.rfind('#');
        if (hash == std::string::npos || hash <= 7 || hash + 1 >= s.size()) {
            throw std::runtime_error("cannot parse transition: " + s);
        }
        int arity = std::stoi(s.substr(hash + 1));
        if (arity < 1) throw std::runtime_error("transition arity must be positive: " + s);
        return Transition::reduce(s.substr(7, hash - 7), arity);
    }
    throw std::runtime_error("cannot parse transition: " + s);
}

}  // namespace nbparse
