#include "nbparse/system.hpp"

#include <algorithm>
#include <climits>

namespace nbparse {

std::string to_string(SystemKind k) {
    return k == SystemKind::nonbinary ? "nonbinary" : "binary";
}

SystemKind system_from_string(const std::string& s) {
    if (s == "nonbinary") return SystemKind::nonbinary;
    if (s == "binary") return SystemKind::binary;
    throw std::runtime_error("unknown system '" + s + "' (expected nonbinary or binary)");
}

void Inventory::add(const Transition& t) {
    switch (t.kind) {
        case TransitionKind::reduce:
            reduce_pairs.emplace(t.label, t.arity);
            labels.insert(t.label);
            break;
        case TransitionKind::reduce_left: left_labels.insert(t.label); break;
        case TransitionKind::reduce_right: right_labels.insert(t.label); break;
        case TransitionKind::reduce_unary: unary_labels.insert(t.label); break;
        default: break;
    }
}

bool Inventory::allows(const Transition& t) const {
    switch (t.kind) {
        case TransitionKind::shift:
        case TransitionKind::finish: return true;
        case TransitionKind::reduce:
            if (system != SystemKind::nonbinary) return false;
            if (any_arity) return labels.count(t.label) > 0;
            return reduce_pairs.count({t.label, t.arity}) > 0;
        case TransitionKind::reduce_left:
            return system == SystemKind::binary && left_labels.count(t.label) > 0;
        case TransitionKind::reduce_right:
            return system == SystemKind::binary && right_labels.count(t.label) > 0;
        case TransitionKind::reduce_unary:
            return system == SystemKind::binary && unary_labels.count(t.label) > 0;
    }
    return false;
}

Inventory Inventory::with_any_arity() const {
    Inventory out = *this;
    out.any_arity = true;
    return out;
}

std::vector<Transition> Inventory::reduce_transitions() const {
    std::vector<Transition> out;
    if (system == SystemKind::nonbinary) {
        for (const auto& [label, arity] : reduce_pairs) out.push_back(Transition::reduce(label, arity));
    } else {
        for (const std::string& l : left_labels) out.push_back(Transition::reduce_left(l));
        for (const std::string& l : right_labels) out.push_back(Transition::reduce_right(l));
        for (const std::string& l : unary_labels) out.push_back(Transition::reduce_unary(l));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Unary level of the item a unary reduce over `top` would create.
int next_unary_level(const StackItem& top) { return top.level + 1; }

std::string structural_block(const Configuration& c, const Transition& t, int unary_cap) {
    if (c.finished) return "configuration is terminal";
    const int stack_size = static_cast<int>(c.stack.size());
    switch (t.kind) {
        case TransitionKind::shift:
            if (c.buffer_empty()) return "shift with an empty buffer";
            return "";
        case TransitionKind::reduce: {
            if (t.arity < 1) return "reduce arity must be positive";
            if (stack_size < t.arity) {
                return "reduce needs " + std::to_string(t.arity) + " stack items, have " +
                       std::to_string(stack_size);
            }
            if (t.arity == 1 && next_unary_level(c.top()) > unary_cap) {
                return "unary chain cap " + std::to_string(unary_cap) + " reached";
            }
            return "";
        }
        case TransitionKind::reduce_left:
        case TransitionKind::reduce_right:
            if (stack_size < 2) return "binary reduce needs two stack items";
            return "";
        case TransitionKind::reduce_unary:
            if (stack_size < 1) return "unary reduce needs a stack item";
            if (next_unary_level(c.top()) > unary_cap) {
                return "unary chain cap " + std::to_string(unary_cap) + " reached";
            }
            return "";
        case TransitionKind::finish:
            if (!c.buffer_empty()) return "finish with unread words";
            if (stack_size != 1) return "finish needs exactly one stack item";
            return "";
    }
    return "unknown transition";
}

void push_recent(Configuration& c, const Transition& t) {
    c.recent.push_back(t);
    if (c.recent.size() > 2) c.recent.erase(c.recent.begin());
}

}  // namespace

bool legal(const Configuration& c, const Transition& t, const Inventory& inv) {
    if (t.kind == TransitionKind::reduce && inv.system != SystemKind::nonbinary) return false;
    if ((t.kind == TransitionKind::reduce_left || t.kind == TransitionKind::reduce_right ||
         t.kind == TransitionKind::reduce_unary) &&
        inv.system != SystemKind::binary) {
        return false;
    }
    if (!structural_block(c, t, inv.unary_cap).empty()) return false;
    return inv.allows(t);
}

std::vector<Transition> legal_transitions(const Configuration& c, const Inventory& inv) {
    std::vector<Transition> out;
    if (c.finished) return out;
    if (legal(c, Transition::shift(), inv)) out.push_back(Transition::shift());
    const int stack_size = static_cast<int>(c.stack.size());
    if (inv.system == SystemKind::nonbinary) {
        if (inv.any_arity) {
            for (const std::string& label : inv.labels) {
                for (int k = 1; k <= stack_size; ++k) {
                    Transition t = Transition::reduce(label, k);
                    if (legal(c, t, inv)) out.push_back(std::move(t));
                }
            }
        } else {
            for (const auto& [label, arity] : inv.reduce_pairs) {
                Transition t = Transition::reduce(label, arity);
                if (legal(c, t, inv)) out.push_back(std::move(t));
            }
        }
    } else {
        for (const std::string& l : inv.left_labels) {
            Transition t = Transition::reduce_left(l);
            if (legal(c, t, inv)) out.push_back(std::move(t));
        }
        for (const std::string& l : inv.right_labels) {
            Transition t = Transition::reduce_right(l);
            if (legal(c, t, inv)) out.push_back(std::move(t));
        }
        for (const std::string& l : inv.unary_labels) {
            Transition t = Transition::reduce_unary(l);
            if (legal(c, t, inv)) out.push_back(std::move(t));
        }
    }
    if (legal(c, Transition::finish(), inv)) out.push_back(Transition::finish());
    std::sort(out.begin(), out.end());
    return out;
}

Configuration apply(const Configuration& c, const Transition& t) {
    // Structural preconditions only. The unary cap is a legality-level
    // constraint checked through legal(); replays of arbitrary valid trees
    // must not be blocked here.
    std::string block = structural_block(c, t, INT_MAX);
    if (!block.empty()) throw IllegalTransition(to_string(t) + ": " + block);

    Configuration next = c;
    switch (t.kind) {
        case TransitionKind::shift: {
            auto node = std::make_shared<BuildNode>();
            node->token_index = c.buffer_index;
            StackItem item;
            item.label = c.word(c.buffer_index).form;
            item.begin = c.buffer_index;
            item.end = c.buffer_index + 1;
            item.level = 0;
            item.token = true;
            item.node = std::move(node);
            next.stack.push_back(std::move(item));
            next.buffer_index = c.buffer_index + 1;
            break;
        }
        case TransitionKind::reduce:
        case TransitionKind::reduce_left:
        case TransitionKind::reduce_right:
        case TransitionKind::reduce_unary: {
            int k = t.kind == TransitionKind::reduce ? t.arity
                    : t.kind == TransitionKind::reduce_unary ? 1
                                                             : 2;
            auto node = std::make_shared<BuildNode>();
            node->label = t.label;
            if (t.kind == TransitionKind::reduce_right) node->head_child = 0;
            if (t.kind == TransitionKind::reduce_left) node->head_child = 1;
            if (t.kind == TransitionKind::reduce_unary) node->head_child = 0;
            const std::size_t base = c.stack.size() - static_cast<std::size_t>(k);
            for (std::size_t i = base; i < c.stack.size(); ++i) {
                node->children.push_back(c.stack[i].node);
            }
            StackItem item;
            item.label = t.label;
            item.begin = c.stack[base].begin;
            item.end = c.stack.back().end;
            item.level = k == 1 ? c.stack.back().level + 1 : 0;
            item.token = false;
            item.node = std::move(node);
            next.stack.resize(base);
            gamma_add(next.gamma, item.constituent());
            next.stack.push_back(std::move(item));
            break;
        }
        case TransitionKind::finish:
            next.finished = true;
            break;
    }
    push_recent(next, t);
    return next;
}

bool is_terminal(const Configuration& c) { return c.finished; }

namespace {

void oracle_nonbinary_node(const Tree& t, std::vector<Transition>& out) {
    if (t.is_leaf()) {
        out.push_back(Transition::shift());
        return;
    }
    for (const Tree& c : t.children) oracle_nonbinary_node(c, out);
    out.push_back(Transition::reduce(t.label, static_cast<int>(t.children.size())));
}

void oracle_binary_node(const Tree& t, std::vector<Transition>& out) {
    if (t.is_leaf()) {
        out.push_back(Transition::shift());
        return;
    }
    for (const Tree& c : t.children) oracle_binary_node(c, out);
    if (t.children.size() == 1) {
        out.push_back(Transition::reduce_unary(t.label));
    } else if (t.children.size() == 2) {
        if (t.head_child != 0 && t.head_child != 1) {
            throw std::runtime_error("binary oracle needs head annotations on '" + t.label + "'");
        }
        out.push_back(t.head_child == 0 ? Transition::reduce_right(t.label)
                                        : Transition::reduce_left(t.label));
    } else {
        throw std::runtime_error("binary oracle on a node with " +
                                 std::to_string(t.children.size()) + " children");
    }
}

}  // namespace

std::vector<Transition> static_oracle_nonbinary(const Tree& tree) {
    std::vector<Transition> out;
    oracle_nonbinary_node(tree, out);
    out.push_back(Transition::finish());
    return out;
}

std::vector<Transition> static_oracle_binary(const Tree& tree) {
    std::vector<Transition> out;
    oracle_binary_node(tree, out);
    out.push_back(Transition::finish());
    return out;
}

std::size_t count_transitions(const Tree& tree) {
    return static_cast<std::size_t>(tree_length(tree)) + count_internal_nodes(tree) + 1;
}

Tree extract_tree(const Configuration& c) {
    if (!c.finished) throw std::runtime_error("extract_tree on a non-terminal configuration");
    if (c.stack.size() != 1) {
        throw std::runtime_error("terminal configuration holds " +
                                 std::to_string(c.stack.size()) + " items, expected 1");
    }
    if (c.stack.front().token) {
        throw std::runtime_error("terminal configuration holds a bare token");
    }
    Tree out = build_node_to_tree(*c.stack.front().node, *c.sentence);
    fix_spans(out);
    return out;
}

Configuration replay(const std::vector<Token>& sentence, const std::vector<Transition>& seq) {
    Configuration c = initial_configuration(sentence);
    for (const Transition& t : seq) c = apply(c, t);
    return c;
}

}  // namespace nbparse
