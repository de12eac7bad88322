#include "nbparse/treegen.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbparse {

namespace {

Token make_token(int index, const RandomTreeParams& p) {
    return Token{p.form_prefix + std::to_string(index),
                 p.pos_tags[static_cast<std::size_t>(index) % p.pos_tags.size()]};
}

const std::string& pick(std::mt19937_64& rng, const std::vector<std::string>& labels) {
    std::uniform_int_distribution<std::size_t> d(0, labels.size() - 1);
    return labels[d(rng)];
}

Tree random_span(std::mt19937_64& rng, const RandomTreeParams& p, int begin, int end) {
    Tree out;
    int level;
    if (end - begin == 1) {
        out = Tree::leaf(make_token(begin, p));
        level = 0;
    } else {
        const int width = end - begin;
        std::uniform_int_distribution<int> arity_d(2, std::min(p.max_arity, width));
        const int arity = arity_d(rng);
        // Random composition of width into `arity` parts.
        std::vector<int> cuts = {begin, end};
        std::vector<bool> used(static_cast<std::size_t>(width), false);
        used[0] = true;
        int placed = 1;
        std::uniform_int_distribution<int> cut_d(begin + 1, end - 1);
        while (placed < arity) {
            int c = cut_d(rng);
            if (!used[static_cast<std::size_t>(c - begin)]) {
                used[static_cast<std::size_t>(c - begin)] = true;
                cuts.push_back(c);
                ++placed;
            }
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<Tree> children;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            children.push_back(random_span(rng, p, cuts[i], cuts[i + 1]));
        }
        out = Tree::node(pick(rng, p.labels), std::move(children));
        level = 0;
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    while (level < p.unary_cap && coin(rng) < p.unary_prob) {
        out = Tree::node(pick(rng, p.labels), {std::move(out)});
        ++level;
    }
    return out;
}

}  // namespace

Tree random_tree(std::mt19937_64& rng, const RandomTreeParams& p) {
    if (p.labels.empty() || p.min_len < 1 || p.max_len < p.min_len) {
        throw std::runtime_error("bad random tree parameters");
    }
    std::uniform_int_distribution<int> len_d(p.min_len, p.max_len);
    const int n = len_d(rng);
    Tree t = random_span(rng, p, 0, n);
    if (t.is_leaf()) t = Tree::node(pick(rng, p.labels), {std::move(t)});
    fix_spans(t);
    return t;
}

Tree right_branching_tree(int n, const std::string& label) {
    if (n < 1) throw std::runtime_error("right_branching_tree needs n >= 1");
    RandomTreeParams p;
    Tree t = Tree::leaf(make_token(n - 1, p));
    if (n == 1) {
        t = Tree::node(label, {std::move(t)});
    }
    for (int i = n - 2; i >= 0; --i) {
        t = Tree::node(label, {Tree::leaf(make_token(i, p)), std::move(t)});
    }
    fix_spans(t);
    return t;
}

namespace {

// All child subtrees over [begin, end): bare tokens or labeled nodes.
std::vector<Tree> enumerate_children(int begin, int end, const std::vector<std::string>& labels,
                                     int leaf_chain_max);

// All internal nodes spanning [begin, end).
std::vector<Tree> enumerate_internal(int begin, int end, const std::vector<std::string>& labels,
                                     int leaf_chain_max) {
    std::vector<Tree> out;
    const int width = end - begin;
    if (width == 1) {
        RandomTreeParams p;
        for (int height = 1; height <= leaf_chain_max; ++height) {
            // all label sequences of this chain height
            std::vector<Tree> layer = {Tree::leaf(make_token(begin, p))};
            for (int h = 0; h < height; ++h) {
                std::vector<Tree> next;
                for (const Tree& t : layer) {
                    for (const std::string& l : labels) next.push_back(Tree::node(l, {t}));
                }
                layer = std::move(next);
            }
            for (Tree& t : layer) out.push_back(std::move(t));
        }
        return out;
    }
    // compositions of the span into >= 2 adjacent parts
    std::vector<std::vector<int>> compositions;  // interior cut points
    std::vector<int> cuts;
    for (int mask = 1; mask < (1 << (width - 1)); ++mask) {
        cuts.clear();
        for (int i = 0; i < width - 1; ++i) {
            if (mask & (1 << i)) cuts.push_back(begin + i + 1);
        }
        compositions.push_back(cuts);
    }
    for (const std::vector<int>& cut : compositions) {
        std::vector<int> bounds = {begin};
        bounds.insert(bounds.end(), cut.begin(), cut.end());
        bounds.push_back(end);
        std::vector<std::vector<Tree>> options;
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
            options.push_back(enumerate_children(bounds[i], bounds[i + 1], labels, leaf_chain_max));
        }
        std::vector<std::vector<Tree>> combos = {{}};
        for (const auto& opt : options) {
            std::vector<std::vector<Tree>> next;
            for (const auto& prefix : combos) {
                for (const Tree& choice : opt) {
                    auto ext = prefix;
                    ext.push_back(choice);
                    next.push_back(std::move(ext));
                }
            }
            combos = std::move(next);
        }
        for (const auto& children : combos) {
            for (const std::string& l : labels) out.push_back(Tree::node(l, children));
        }
    }
    return out;
}

std::vector<Tree> enumerate_children(int begin, int end, const std::vector<std::string>& labels,
                                     int leaf_chain_max) {
    std::vector<Tree> out;
    if (end - begin == 1) {
        RandomTreeParams p;
        out.push_back(Tree::leaf(make_token(begin, p)));
        std::vector<Tree> chains = enumerate_internal(begin, end, labels, leaf_chain_max);
        for (Tree& t : chains) out.push_back(std::move(t));
        return out;
    }
    return enumerate_internal(begin, end, labels, leaf_chain_max);
}

}  // namespace

std::vector<Tree> enumerate_trees(int n, const std::vector<std::string>& labels,
                                  int leaf_chain_max, int extra_unary_max) {
    if (n < 1) throw std::runtime_error("enumerate_trees needs n >= 1");
    std::vector<Tree> base;
    if (n == 1) {
        base = enumerate_internal(0, 1, labels, std::max(leaf_chain_max, 1));
    } else {
        base = enumerate_internal(0, n, labels, leaf_chain_max);
    }
    std::vector<Tree> out;
    for (const Tree& t : base) {
        out.push_back(t);
        std::vector<Tree> layer = {t};
        for (int extra = 1; extra <= extra_unary_max; ++extra) {
            std::vector<Tree> next;
            for (const Tree& prev : layer) {
                for (const std::string& l : labels) next.push_back(Tree::node(l, {prev}));
            }
            for (const Tree& w : next) out.push_back(w);
            layer = std::move(next);
        }
    }
    for (Tree& t : out) fix_spans(t);
    return out;
}

std::vector<std::string> default_labels(int k) {
    std::vector<std::string> out;
    for (int i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
    return out;
}

}  // namespace nbparse
