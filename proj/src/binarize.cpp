#include "nbparse/binarize.hpp"

#include <stdexcept>

namespace nbparse {

bool is_auxiliary_label(const std::string& label) {
    return !label.empty() && label.back() == '*';
}

namespace {

std::string child_label(const Tree& c) { return c.is_leaf() ? c.token.pos : c.label; }

Tree binarize_node(const Tree& t, const HeadRuleTable& rules) {
    if (t.is_leaf()) return t;
    std::vector<Tree> children;
    children.reserve(t.children.size());
    for (const Tree& c : t.children) children.push_back(binarize_node(c, rules));

    if (children.size() == 1) {
        Tree out = Tree::node(t.label, std::move(children));
        out.head_child = 0;
        return out;
    }

    std::vector<std::string> labels;
    labels.reserve(t.children.size());
    for (const Tree& c : t.children) labels.push_back(child_label(c));
    const int head = rules.head_index(t.label, labels);

    if (children.size() == 2) {
        Tree out = Tree::node(t.label, std::move(children));
        out.head_child = head;
        return out;
    }

    const std::string star = t.label + "*";
    const int m = static_cast<int>(children.size());
    Tree core = std::move(children[head]);
    for (int i = head + 1; i < m; ++i) {
        Tree merged = Tree::node(star, {});
        merged.children.push_back(std::move(core));
        merged.children.push_back(std::move(children[i]));
        merged.head_child = 0;
        core = std::move(merged);
    }
    for (int i = head - 1; i >= 0; --i) {
        Tree merged = Tree::node(star, {});
        merged.children.push_back(std::move(children[i]));
        merged.children.push_back(std::move(core));
        merged.head_child = 1;
        core = std::move(merged);
    }
    core.label = t.label;
    return core;
}

// Returns the splice list: either the node itself or, for '*' nodes, its
// unbinarized children.
std::vector<Tree> unbinarize_node(const Tree& t) {
    if (t.is_leaf()) return {t};
    std::vector<Tree> children;
    for (const Tree& c : t.children) {
        for (Tree& piece : unbinarize_node(c)) children.push_back(std::move(piece));
    }
    if (is_auxiliary_label(t.label)) return children;
    Tree out = Tree::node(t.label, std::move(children));
    return {out};
}

}  // namespace

Tree binarize(const Tree& tree, const HeadRuleTable& rules) {
    Tree out = binarize_node(tree, rules);
    fix_spans(out, tree.begin);
    return out;
}

Tree unbinarize(const Tree& tree) {
    if (is_auxiliary_label(tree.label)) {
        throw std::runtime_error("malformed binary tree: '" + tree.label + "' node at the root");
    }
    std::vector<Tree> pieces = unbinarize_node(tree);
    Tree out = std::move(pieces.front());
    fix_spans(out, tree.begin);
    return out;
}

}  // namespace nbparse
