#include "nbparse/config.hpp"

#include <stdexcept>

namespace nbparse {

Configuration initial_configuration(std::vector<Token> sentence) {
    return initial_configuration(
        std::make_shared<const std::vector<Token>>(std::move(sentence)));
}

Configuration initial_configuration(std::shared_ptr<const std::vector<Token>> sentence) {
    if (!sentence || sentence->empty()) {
        throw std::runtime_error("cannot initialize parser on an empty sentence");
    }
    Configuration c;
    c.sentence = std::move(sentence);
    return c;
}

std::vector<int> stack_left_endpoints(const Configuration& c) {
    std::vector<int> out;
    out.reserve(c.stack.size());
    for (const StackItem& item : c.stack) out.push_back(item.begin);
    return out;
}

std::string check_invariants(const Configuration& c) {
    if (c.buffer_index < 0 || c.buffer_index > c.length()) return "buffer index out of range";
    if (c.finished && !c.buffer_empty()) return "finished with unread words";
    int at = 0;
    for (const StackItem& item : c.stack) {
        if (item.begin != at) return "stack spans not adjacent";
        if (item.end <= item.begin) return "empty stack span";
        at = item.end;
    }
    if (at != c.buffer_index) return "topmost stack span does not end at the buffer index";
    return "";
}

Tree build_node_to_tree(const BuildNode& node, const std::vector<Token>& sentence) {
    if (node.is_token()) {
        return Tree::leaf(sentence.at(static_cast<std::size_t>(node.token_index)));
    }
    std::vector<Tree> children;
    children.reserve(node.children.size());
    for (const BuildNodeRef& c : node.children) {
        children.push_back(build_node_to_tree(*c, sentence));
    }
    Tree out = Tree::node(node.label, std::move(children));
    out.head_child = node.head_child;
    return out;
}

}  // namespace nbparse
