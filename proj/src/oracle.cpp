#include "nbparse/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "nbparse/ptb.hpp"
#include "nbparse/treegen.hpp"

namespace nbparse {

GoldSet GoldSet::from_tree(const Tree& tree) {
    GoldSet gold;
    gold.constituents = decompose(tree);
    gold.sentence_length = tree_length(tree);
    return gold;
}

bool is_reachable(const Configuration& c, const Constituent& g, const ReachabilityOptions& opts) {
    if (opts.built_condition && gamma_contains(c.gamma, g)) return true;
    if (c.finished) return false;
    const int j = c.buffer_index;
    if (opts.buffer_condition && g.begin >= j) return true;
    if (!opts.stack_condition) return false;
    if (g.end < j) return false;
    // find the stack item sharing the gold left endpoint
    for (std::size_t i = 0; i < c.stack.size(); ++i) {
        if (c.stack[i].begin != g.begin) continue;
        if (g.end > j) return true;
        // g.end == j: a reduce over the items from i to the top could build it
        const std::size_t involved = c.stack.size() - i;
        if (involved >= 2) return true;
        // only the top item spans (begin, j): unary reductions can now reach
        // chain positions strictly above the top item's
        if (!opts.same_span_refinement) return true;
        return g.level > c.stack.back().level;
    }
    return false;
}

ReachabilityReport loss_report(const Configuration& c, const GoldSet& gold,
                               const ReachabilityOptions& opts) {
    ReachabilityReport report;
    for (const auto& [cons, count] : gold.constituents) {
        Gamma& side = is_reachable(c, cons, opts) ? report.reachable : report.unreachable;
        side[cons] += count;
    }
    for (const auto& [cons, count] : c.gamma) {
        auto it = gold.constituents.find(cons);
        const int gold_count = it == gold.constituents.end() ? 0 : it->second;
        if (count > gold_count) report.false_positives[cons] += count - gold_count;
    }
    report.loss = static_cast<int>(gamma_size(report.unreachable)) +
                  static_cast<int>(gamma_size(report.false_positives));
    return report;
}

int loss_value(const Configuration& c, const GoldSet& gold, const ReachabilityOptions& opts) {
    int loss = 0;
    for (const auto& [cons, count] : gold.constituents) {
        if (!is_reachable(c, cons, opts)) loss += count;
    }
    for (const auto& [cons, count] : c.gamma) {
        auto it = gold.constituents.find(cons);
        const int gold_count = it == gold.constituents.end() ? 0 : it->second;
        if (count > gold_count) loss += count - gold_count;
    }
    return loss;
}

std::vector<Transition> zero_cost_transitions(const Configuration& c, const GoldSet& gold,
                                              const Inventory& inv,
                                              const ReachabilityOptions& opts) {
    std::vector<Transition> out;
    const int base = loss_value(c, gold, opts);
    for (const Transition& t : legal_transitions(c, inv)) {
        if (loss_value(apply(c, t), gold, opts) == base) out.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact reference loss

namespace {
class BudgetExceeded {};
}  // namespace

ExactLossSearch::ExactLossSearch(GoldSet gold, Inventory legality, std::size_t state_budget)
    : gold_(std::move(gold)), legality_(std::move(legality)), budget_(state_budget) {
    int bit = 0;
    for (const auto& [cons, count] : gold_.constituents) {
        if (count != 1) {
            throw std::runtime_error("gold multiset with duplicate key " + to_string(cons));
        }
        gold_bits_[cons] = bit++;
    }
    if (bit > 62) throw std::runtime_error("gold set too large for the exact search");
    if (gold_.sentence_length > 80) {
        throw std::runtime_error("the exact search is meant for short sentences");
    }
}

std::uint64_t ExactLossSearch::built_mask(const Configuration& c) const {
    std::uint64_t mask = 0;
    for (const auto& [cons, count] : c.gamma) {
        auto it = gold_bits_.find(cons);
        if (it != gold_bits_.end() && count > 0) mask |= std::uint64_t{1} << it->second;
    }
    return mask;
}

// Stack item labels never influence what can still be built: legality looks
// at sizes and levels, and a reduce's result takes its label from the
// transition. Keys therefore record only the stack shape (span ends, levels,
// token flags), the buffer index and the built gold subset, which collapses
// the search space by a factor exponential in the stack depth.
std::string ExactLossSearch::state_key(const Configuration& c) const {
    std::string key;
    key.reserve(c.stack.size() * 2 + 12);
    for (const StackItem& item : c.stack) {
        key.push_back(static_cast<char>('0' + item.end));
        key.push_back(item.token ? 'T' : static_cast<char>('a' + item.level));
    }
    key.push_back('|');
    key.push_back(static_cast<char>('0' + c.buffer_index));
    const std::uint64_t mask = built_mask(c);
    for (int b = 0; b < 8; ++b) key.push_back(static_cast<char>((mask >> (8 * b)) & 0xff));
    return key;
}

int ExactLossSearch::future_loss(const Configuration& c) {
    const std::string key = state_key(c);
    auto found = memo_.find(key);
    if (found != memo_.end()) return found->second;
    if (memo_.size() >= budget_) throw BudgetExceeded{};

    int best = INT32_MAX;
    for (const Transition& t : legal_transitions(c, legality_)) {
        int candidate;
        if (t.kind == TransitionKind::finish) {
            const std::uint64_t mask = built_mask(c);
            int misses = 0;
            for (const auto& [cons, bit] : gold_bits_) {
                if (!(mask & (std::uint64_t{1} << bit))) ++misses;
            }
            candidate = misses;
        } else {
            int delta = 0;
            if (t.is_reduce()) {
                Constituent made;
                made.label = t.label;
                const int k = t.kind == TransitionKind::reduce        ? t.arity
                              : t.kind == TransitionKind::reduce_unary ? 1
                                                                       : 2;
                const std::size_t base = c.stack.size() - static_cast<std::size_t>(k);
                made.begin = c.stack[base].begin;
                made.end = c.stack.back().end;
                made.level = k == 1 ? c.stack.back().level + 1 : 0;
                auto it = gold_bits_.find(made);
                const bool creates_gold =
                    it != gold_bits_.end() && !gamma_contains(c.gamma, made);
                delta = creates_gold ? 0 : 1;
            }
            candidate = delta + future_loss(apply(c, t));
        }
        if (candidate < best) best = candidate;
    }
    if (best == INT32_MAX) {
        throw std::runtime_error("exact search reached a dead-end configuration");
    }
    memo_[key] = best;
    return best;
}

std::optional<int> ExactLossSearch::min_loss(const Configuration& c) {
    int sunk = 0;
    for (const auto& [cons, count] : c.gamma) {
        auto it = gold_.constituents.find(cons);
        const int gold_count = it == gold_.constituents.end() ? 0 : it->second;
        if (count > gold_count) sunk += count - gold_count;
    }
    if (c.finished) {
        int misses = 0;
        for (const auto& [cons, count] : gold_.constituents) {
            if (!gamma_contains(c.gamma, cons)) misses += count;
        }
        return sunk + misses;
    }
    try {
        return sunk + future_loss(c);
    } catch (const BudgetExceeded&) {
        return std::nullopt;
    }
}

std::optional<int> brute_force_min_loss(const Configuration& c, const GoldSet& gold,
                                        const Inventory& legality, std::size_t state_budget) {
    ExactLossSearch search(gold, legality, state_budget);
    return search.min_loss(c);
}

// ---------------------------------------------------------------------------
// Exploration

ExplorationPolicy ExplorationPolicy::parse(const std::string& spec) {
    ExplorationPolicy policy;
    if (spec.empty() || spec == "none") return policy;
    std::istringstream in(spec);
    std::string part;
    while (std::getline(in, part, ',')) {
        std::size_t eq = part.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("bad exploration spec '" + spec +
                                     "' (expected aggr=<margin>,reg=<prob>)");
        }
        const std::string key = part.substr(0, eq);
        const double value = std::stod(part.substr(eq + 1));
        if (key == "aggr") {
            policy.margin = value;
        } else if (key == "reg") {
            policy.prob = value;
        } else {
            throw std::runtime_error("unknown exploration criterion '" + key + "'");
        }
    }
    return policy;
}

std::string ExplorationPolicy::to_string() const {
    std::ostringstream out;
    if (margin) out << "aggr=" << *margin;
    if (prob) {
        if (margin) out << ",";
        out << "reg=" << *prob;
    }
    if (!margin && !prob) out << "none";
    return out.str();
}

Transition explore(const Configuration& c, const std::map<Transition, double>& scores,
                   const GoldSet& gold, const Inventory& inv, const ExplorationPolicy& policy,
                   std::mt19937_64& rng) {
    std::vector<Transition> legal = legal_transitions(c, inv);
    if (legal.empty()) throw std::runtime_error("explore: no legal transition");
    std::vector<Transition> zero = zero_cost_transitions(c, gold, inv);

    auto score_of = [&scores](const Transition& t) {
        auto it = scores.find(t);
        return it == scores.end() ? 0.0 : it->second;
    };
    auto best_of = [&score_of](const std::vector<Transition>& ts) {
        const Transition* best = nullptr;
        double best_score = 0;
        for (const Transition& t : ts) {
            double s = score_of(t);
            if (!best || s > best_score || (s == best_score && t < *best)) {
                best = &t;
                best_score = s;
            }
        }
        return best;
    };

    std::vector<Transition> wrong;
    for (const Transition& t : legal) {
        if (std::find(zero.begin(), zero.end(), t) == zero.end()) wrong.push_back(t);
    }
    const Transition* z = best_of(zero);
    const Transition* w = best_of(wrong);
    if (!z) return w ? *w : legal.front();
    if (!w) return *z;

    const double zs = score_of(*z), ws = score_of(*w);
    if (policy.margin && ws >= zs - *policy.margin) return *w;
    if (policy.prob && *policy.prob > 0 && ws > zs) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        if (coin(rng) < *policy.prob) return *w;
    }
    return *z;
}

// ---------------------------------------------------------------------------
// Audit

namespace {

std::string sentence_string(const std::vector<Token>& tokens) {
    std::string out;
    for (const Token& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t.form + "_" + t.pos;
    }
    return out;
}

struct AuditState {
    Configuration config;
    std::vector<Transition> prefix;
};

// Checks every distinct configuration reachable within `depth` transitions.
void audit_tree(const Tree& tree, const Inventory& legality, int depth,
                const AuditOptions& options, AuditResult& result, ExactLossSearch& search) {
    const GoldSet& gold = search.gold();
    std::vector<AuditState> frontier;
    frontier.push_back({replay(tree_tokens(tree), {}), {}});
    std::unordered_map<std::string, bool> seen;

    // The verdict of a check depends only on the stack shape, the buffer
    // index and the built gold subset: unreachable counts and the exact
    // future are invariant to non-gold labels and false positives cancel
    // between the two sides, so one labeled representative per shape class
    // covers them all.
    std::map<Constituent, int> gold_bits;
    int next_bit = 0;
    for (const auto& [cons, count] : gold.constituents) gold_bits[cons] = next_bit++;
    auto key_of = [&](const Configuration& c) {
        std::string key;
        key.reserve(c.stack.size() * 2 + 12);
        for (const StackItem& item : c.stack) {
            key.push_back(static_cast<char>('0' + item.end));
            key.push_back(item.token ? 'T' : static_cast<char>('a' + item.level));
        }
        key.push_back('|');
        key.push_back(static_cast<char>('0' + c.buffer_index));
        std::uint64_t mask = 0;
        for (const auto& [cons, count] : c.gamma) {
            auto it = gold_bits.find(cons);
            if (it != gold_bits.end()) mask |= std::uint64_t{1} << it->second;
        }
        for (int b = 0; b < 8; ++b) key.push_back(static_cast<char>((mask >> (8 * b)) & 0xff));
        return key;
    };

    for (int level = 0; level <= depth && !frontier.empty(); ++level) {
        std::vector<AuditState> next;
        for (AuditState& state : frontier) {
            const std::string key = key_of(state.config);
            if (seen.count(key)) continue;
            seen.emplace(key, true);

            const int oracle = loss_value(state.config, gold, options.reachability);
            std::optional<int> exact = search.min_loss(state.config);
            ++result.configurations;
            if (!exact) {
                ++result.budget_skips;
            } else if (*exact != oracle) {
                ++result.mismatches;
                if (!result.first_mismatch) {
                    AuditCounterexample ce;
                    ce.sentence = sentence_string(tree_tokens(tree));
                    ce.gold_tree = write_ptb(tree);
                    for (const Transition& t : state.prefix) ce.transitions.push_back(to_string(t));
                    ce.oracle_loss = oracle;
                    ce.exact_loss = *exact;
                    result.first_mismatch = std::move(ce);
                }
            }
            if (level == depth || state.config.finished) continue;
            for (const Transition& t : legal_transitions(state.config, legality)) {
                if (t.kind == TransitionKind::finish) continue;  // loss is defined pre-finish
                AuditState child;
                child.config = apply(state.config, t);
                child.prefix = state.prefix;
                child.prefix.push_back(t);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
}

Inventory audit_inventory(const Tree& tree, int unary_cap, bool add_distractor) {
    Inventory inv;
    inv.system = SystemKind::nonbinary;
    inv.unary_cap = unary_cap;
    inv.any_arity = true;
    for (const auto& [cons, count] : decompose(tree)) inv.labels.insert(cons.label);
    if (add_distractor) inv.labels.insert("Z");
    return inv;
}

}  // namespace

AuditResult audit_oracle(const AuditOptions& options) {
    AuditResult result;

    if (options.exhaustive) {
        // Three exhaustive families over the first `exhaustive_labels` labels:
        // bare branching skeletons up to max_n, full unary combinations over
        // one- and two-word sentences, and single-unary decorations at n = 3.
        std::vector<std::string> labels = default_labels(options.exhaustive_labels);
        std::vector<Tree> trees;
        for (int n = 1; n <= options.exhaustive_max_n; ++n) {
            std::vector<Tree> family;
            if (n <= 2) {
                family = enumerate_trees(n, labels, 2, 1);
            } else if (n == 3) {
                family = enumerate_trees(n, labels, 1, 0);
            } else {
                family = enumerate_trees(n, labels, 0, 0);
            }
            trees.insert(trees.end(), family.begin(), family.end());
        }
        for (const Tree& tree : trees) {
            Inventory legality = audit_inventory(tree, options.unary_cap, false);
            ExactLossSearch search(GoldSet::from_tree(tree), legality, options.state_budget);
            audit_tree(tree, legality, options.exhaustive_depth, options, result, search);
            ++result.trees;
            if (result.mismatches > 0) return result;
        }
    }

    if (options.sampled_configs > 0) {
        std::mt19937_64 rng(options.seed);
        RandomTreeParams params;
        params.min_len = 1;
        params.max_len = options.sampled_max_n;
        params.max_arity = 4;
        params.labels = default_labels(options.sampled_labels);
        params.unary_cap = options.unary_cap;
        params.unary_prob = 0.25;

        int produced = 0;
        const int per_tree = 5;
        long attempts = 0;
        const long attempt_limit = 40L * options.sampled_configs + 400;
        while (produced < options.sampled_configs) {
            Tree tree = random_tree(rng, params);
            Inventory legality = audit_inventory(tree, options.unary_cap, true);
            ExactLossSearch search(GoldSet::from_tree(tree), legality, options.state_budget);
            ++result.trees;
            int min_depth = 0;  // raised after a budget miss: deeper walks have smaller futures
            for (int s = 0; s < per_tree && produced < options.sampled_configs; ++s) {
                if (++attempts > attempt_limit) {
                    throw std::runtime_error("oracle audit: sampling stalled on the state budget");
                }
                // random walk of random depth
                Configuration c = replay(tree_tokens(tree), {});
                std::vector<Transition> prefix;
                const int max_steps =
                    static_cast<int>(count_transitions(tree)) + options.unary_cap;
                std::uniform_int_distribution<int> depth_d(std::min(min_depth, max_steps),
                                                           max_steps);
                const int steps = depth_d(rng);
                for (int k = 0; k < steps; ++k) {
                    std::vector<Transition> legal = legal_transitions(c, legality);
                    std::erase_if(legal, [](const Transition& t) {
                        return t.kind == TransitionKind::finish;
                    });
                    if (legal.empty()) break;
                    std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
                    const Transition& t = legal[pick(rng)];
                    c = apply(c, t);
                    prefix.push_back(t);
                }
                const int oracle = loss_value(c, search.gold(), options.reachability);
                std::optional<int> exact = search.min_loss(c);
                if (!exact) {
                    ++result.budget_skips;
                    min_depth = static_cast<int>(prefix.size()) + 2;
                    --s;  // retry this slot deeper into the parse
                    continue;
                }
                ++result.configurations;
                ++produced;
                if (*exact != oracle) {
                    ++result.mismatches;
                    if (!result.first_mismatch) {
                        AuditCounterexample ce;
                        ce.sentence = sentence_string(tree_tokens(tree));
                        ce.gold_tree = write_ptb(tree);
                        for (const Transition& t : prefix) ce.transitions.push_back(to_string(t));
                        ce.oracle_loss = oracle;
                        ce.exact_loss = *exact;
                        result.first_mismatch = std::move(ce);
                    }
                    return result;
                }
            }
        }
    }

    return result;
}

}  // namespace nbparse
