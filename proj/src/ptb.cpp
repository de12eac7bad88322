#include "nbparse/ptb.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace nbparse {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t at = 0;
    int line = 1;
    int column = 1;

    bool done() const { return at >= text.size(); }
    char peek() const { return text[at]; }

    void advance() {
        if (text[at] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++at;
    }

    void skip_space() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    [[noreturn]] void fail(const std::string& msg) const { throw PtbError(msg, line, column); }
};

bool is_word_char(char c) {
    return c != '(' && c != ')' && !std::isspace(static_cast<unsigned char>(c));
}

std::string read_atom(Cursor& cur) {
    std::string out;
    while (!cur.done() && is_word_char(cur.peek())) {
        out.push_back(cur.peek());
        cur.advance();
    }
    return out;
}

std::string normalize_label(std::string label, const PtbOptions& options) {
    if (!options.strip_function_tags || label.empty() || label[0] == '-') return label;
    std::size_t cut = label.find_first_of("-=");
    if (cut != std::string::npos && cut > 0) label.resize(cut);
    return label;
}

// Raw node before trace removal; label is empty for a wrapper candidate.
struct RawNode {
    std::string label;
    std::optional<Token> word;
    std::vector<RawNode> children;
    int line = 1;
    int column = 1;
};

RawNode parse_node(Cursor& cur, const PtbOptions& options) {
    RawNode node;
    node.line = cur.line;
    node.column = cur.column;
    if (cur.done() || cur.peek() != '(') cur.fail("expected '('");
    cur.advance();
    cur.skip_space();
    node.label = normalize_label(read_atom(cur), options);
    cur.skip_space();
    if (cur.done()) cur.fail("unbalanced brackets: unexpected end of input");
    if (cur.peek() == ')') {
        cur.fail("node '" + node.label + "' has no children");
    }
    if (cur.peek() == '(') {
        while (!cur.done() && cur.peek() == '(') {
            node.children.push_back(parse_node(cur, options));
            cur.skip_space();
        }
    } else {
        std::string form = read_atom(cur);
        if (form.empty()) cur.fail("expected a word or '('");
        if (node.label.empty()) cur.fail("preterminal with empty tag");
        node.word = Token{form, node.label};
        cur.skip_space();
        if (!cur.done() && cur.peek() != ')') {
            cur.fail("unexpected material after word '" + form + "'");
        }
    }
    if (cur.done() || cur.peek() != ')') cur.fail("unbalanced brackets: expected ')'");
    cur.advance();
    return node;
}

// Converts to Tree, dropping traces. Returns nullopt if the subtree is empty
// after removal.
std::optional<Tree> build_tree(const RawNode& raw, const PtbOptions& options) {
    if (raw.word) {
        if (options.drop_traces && raw.word->pos == "-NONE-") return std::nullopt;
        return Tree::leaf(*raw.word);
    }
    std::vector<Tree> children;
    for (const RawNode& c : raw.children) {
        if (c.label.empty() && !c.word) {
            throw PtbError("empty nonterminal label in non-wrapper position", c.line, c.column);
        }
        if (auto t = build_tree(c, options)) children.push_back(std::move(*t));
    }
    if (children.empty()) return std::nullopt;
    return Tree::node(raw.label, std::move(children));
}

}  // namespace

std::vector<Tree> read_ptb(const std::string& text, const PtbOptions& options) {
    Cursor cur{text};
    std::vector<Tree> trees;
    cur.skip_space();
    while (!cur.done()) {
        RawNode raw = parse_node(cur, options);
        std::vector<const RawNode*> roots;
        if (raw.label.empty() && !raw.word) {
            // Wrapper pair "( ... )": its children are the actual trees.
            for (const RawNode& c : raw.children) roots.push_back(&c);
        } else {
            roots.push_back(&raw);
        }
        for (const RawNode* r : roots) {
            if (r->label.empty() && !r->word) {
                throw PtbError("empty nonterminal label in non-wrapper position", r->line,
                               r->column);
            }
            if (r->word) throw PtbError("top-level bare token", r->line, r->column);
            auto tree = build_tree(*r, options);
            if (!tree) throw PtbError("tree is empty after trace removal", r->line, r->column);
            fix_spans(*tree);
            trees.push_back(std::move(*tree));
        }
        cur.skip_space();
    }
    return trees;
}

std::vector<Tree> read_ptb_file(const std::string& path, const PtbOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open treebank file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_ptb(buf.str(), options);
}

namespace {

void write_node(const Tree& t, std::string& out) {
    out.push_back('(');
    if (t.is_leaf()) {
        out += t.token.pos;
        out.push_back(' ');
        out += t.token.form;
    } else {
        out += t.label;
        for (const Tree& c : t.children) {
            out.push_back(' ');
            write_node(c, out);
        }
    }
    out.push_back(')');
}

}  // namespace

std::string write_ptb(const Tree& tree) {
    std::string out;
    write_node(tree, out);
    return out;
}

void write_ptb_file(const std::string& path, const std::vector<Tree>& trees) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    for (const Tree& t : trees) out << write_ptb(t) << "\n";
}

}  // namespace nbparse
