#ifndef NBPARSE_HEAD_RULES_HPP
#define NBPARSE_HEAD_RULES_HPP

#include <map>
#include <string>
#include <vector>

namespace nbparse {

// Head-percolation table. One rule per parent label: a scan direction and a
// priority list of child labels. The first priority label found while
// scanning the children in the rule's direction wins; if none matches, the
// head is the first child in scan direction. Parents without a rule default
// to the leftmost child.
class HeadRuleTable {
  public:
    enum class Direction { left, right };

    struct Rule {
        Direction direction = Direction::left;
        std::vector<std::string> priority;
    };

    // File format: "PARENT direction child1 child2 ...", '#' starts a comment.
    // The first rule seen for a parent wins.
    static HeadRuleTable from_string(const std::string& text);
    static HeadRuleTable from_file(const std::string& path);

    void add_rule(const std::string& parent, Rule rule);

    // Index of the head child among `child_labels` (token children are
    // identified by their POS tag). Total: always returns a valid index.
    int head_index(const std::string& parent, const std::vector<std::string>& child_labels) const;

    bool has_rule(const std::string& parent) const { return rules_.count(parent) > 0; }
    std::size_t size() const { return rules_.size(); }

  private:
    std::map<std::string, Rule> rules_;
};

}  // namespace nbparse

#endif
