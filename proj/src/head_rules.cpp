#include "nbparse/head_rules.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nbparse {

HeadRuleTable HeadRuleTable::from_string(const std::string& text) {
    HeadRuleTable table;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string parent, direction;
        if (!(fields >> parent)) continue;
        if (!(fields >> direction) || (direction != "left" && direction != "right")) {
            throw std::runtime_error("head rule line " + std::to_string(lineno) +
                                     ": expected direction 'left' or 'right'");
        }
        Rule rule;
        rule.direction = direction == "left" ? Direction::left : Direction::right;
        std::string child;
        while (fields >> child) rule.priority.push_back(child);
        table.add_rule(parent, std::move(rule));
    }
    return table;
}

HeadRuleTable HeadRuleTable::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open head rule file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

void HeadRuleTable::add_rule(const std::string& parent, Rule rule) {
    rules_.emplace(parent, std::move(rule));  // first rule wins
}

int HeadRuleTable::head_index(const std::string& parent,
                              const std::vector<std::string>& child_labels) const {
    if (child_labels.empty()) throw std::runtime_error("head_index on childless node");
    auto it = rules_.find(parent);
    if (it == rules_.end()) return 0;  // default: leftmost child
    const Rule& rule = it->second;
    const int n = static_cast<int>(child_labels.size());
    for (const std::string& want : rule.priority) {
        if (rule.direction == Direction::left) {
            for (int i = 0; i < n; ++i) {
                if (child_labels[i] == want) return i;
            }
        } else {
            for (int i = n - 1; i >= 0; --i) {
                if (child_labels[i] == want) return i;
            }
        }
    }
    return rule.direction == Direction::left ? 0 : n - 1;
}

}  // namespace nbparse
