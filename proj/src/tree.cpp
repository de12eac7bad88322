#include "nbparse/tree.hpp"

#include <sstream>

namespace nbparse {

bool Tree::operator==(const Tree& o) const {
    if (is_leaf() != o.is_leaf()) return false;
    if (is_leaf()) return token == o.token;
    if (label != o.label || head_child != o.head_child) return false;
    if (children.size() != o.children.size()) return false;
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (children[i] != o.children[i]) return false;
    }
    return true;
}

std::string to_string(const Constituent& c) {
    std::ostringstream os;
    os << "(" << c.label << "," << c.begin << "," << c.end;
    if (c.level > 0) os << ",u" << c.level;
    os << ")";
    return os.str();
}

void gamma_add(Gamma& g, const Constituent& c) { ++g[c]; }

bool gamma_contains(const Gamma& g, const Constituent& c) {
    auto it = g.find(c);
    return it != g.end() && it->second > 0;
}

std::size_t gamma_size(const Gamma& g) {
    std::size_t n = 0;
    for (const auto& [c, k] : g) n += static_cast<std::size_t>(k);
    return n;
}

std::size_t gamma_difference_size(const Gamma& a, const Gamma& b) {
    std::size_t n = 0;
    for (const auto& [c, k] : a) {
        auto it = b.find(c);
        int kept = it == b.end() ? 0 : it->second;
        if (k > kept) n += static_cast<std::size_t>(k - kept);
    }
    return n;
}

bool gamma_subset(const Gamma& a, const Gamma& b) {
    for (const auto& [c, k] : a) {
        auto it = b.find(c);
        if (it == b.end() || it->second < k) return false;
    }
    return true;
}

int tree_length(const Tree& t) {
    if (t.is_leaf()) return 1;
    int n = 0;
    for (const Tree& c : t.children) n += tree_length(c);
    return n;
}

static void collect_tokens(const Tree& t, std::vector<Token>& out) {
    if (t.is_leaf()) {
        out.push_back(t.token);
        return;
    }
    for (const Tree& c : t.children) collect_tokens(c, out);
}

std::vector<Token> tree_tokens(const Tree& t) {
    std::vector<Token> out;
    collect_tokens(t, out);
    return out;
}

void fix_spans(Tree& t, int start) {
    t.begin = start;
    if (t.is_leaf()) {
        t.end = start + 1;
        return;
    }
    int at = start;
    for (Tree& c : t.children) {
        fix_spans(c, at);
        at = c.end;
    }
    t.end = at;
}

int unary_level(const Tree& t) {
    if (t.is_leaf()) return 0;
    if (t.children.size() >= 2) return 0;
    return 1 + unary_level(t.children.front());
}

int max_unary_level(const Tree& t) {
    int best = t.is_leaf() ? 0 : unary_level(t);
    for (const Tree& c : t.children) {
        int m = max_unary_level(c);
        if (m > best) best = m;
    }
    return best;
}

static void decompose_into(const Tree& t, Gamma& g) {
    if (t.is_leaf()) return;
    gamma_add(g, Constituent{t.label, t.begin, t.end, unary_level(t)});
    for (const Tree& c : t.children) decompose_into(c, g);
}

Gamma decompose(const Tree& t) {
    Gamma g;
    decompose_into(t, g);
    return g;
}

std::size_t count_internal_nodes(const Tree& t) {
    if (t.is_leaf()) return 0;
    std::size_t n = 1;
    for (const Tree& c : t.children) n += count_internal_nodes(c);
    return n;
}

static std::string validate_node(const Tree& t, int unary_cap, int at) {
    if (t.is_leaf()) {
        if (t.token.form.empty()) return "empty token form";
        for (char ch : t.token.form) {
            if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '(' || ch == ')') {
                return "token form '" + t.token.form + "' contains whitespace or parentheses";
            }
        }
        if (t.token.pos.empty()) return "empty POS tag for token '" + t.token.form + "'";
        if (t.begin != at || t.end != at + 1) return "leaf span out of date";
        return "";
    }
    if (t.label.empty()) return "internal node with empty label";
    if (t.children.empty()) return "internal node '" + t.label + "' with no children";
    if (unary_level(t) > unary_cap) {
        return "unary chain above span (" + std::to_string(t.begin) + "," +
               std::to_string(t.end) + ") exceeds cap " + std::to_string(unary_cap);
    }
    int pos = at;
    for (const Tree& c : t.children) {
        std::string err = validate_node(c, unary_cap, pos);
        if (!err.empty()) return err;
        if (c.begin != pos) return "child spans not adjacent under '" + t.label + "'";
        pos = c.end;
    }
    if (t.begin != at || t.end != pos) return "span of '" + t.label + "' out of date";
    return "";
}

std::string validate_tree(const Tree& t, int unary_cap) {
    if (t.is_leaf()) return "tree root is a bare token";
    return validate_node(t, unary_cap, t.begin);
}

Tree strip_head_annotations(Tree t) {
    t.head_child = -1;
    for (Tree& c : t.children) c = strip_head_annotations(std::move(c));
    return t;
}

}  // namespace nbparse
