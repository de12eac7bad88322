// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "nbparse/binarize.hpp"
#include "nbparse/evaluator.hpp"
#include "nbparse/oracle.hpp"
#include "nbparse/ptb.hpp"
#include "nbparse/trainer.hpp"
#include "nbparse/treegen.hpp"

using namespace nbparse;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, double seconds, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << std::left << std::setw(28) << name
              << std::fixed << std::setprecision(2) << std::setw(8) << seconds << "s  " << detail
              << "\n";
    if (!ok) ++failures;
}

void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto t0 = clock_type::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(name, ok, std::chrono::duration<double>(clock_type::now() - t0).count(), detail);
}

const char* kSentence =
    "(S (NP (DT The) (NN public)) (VP (VBZ is) (ADVP (RB still)) (ADJP (JJ cautious))) (. .))";

const char* kHeadRules =
    "S left VP\n"
    "VP left VBZ VBD VBP VB MD\n"
    "NP right NN NNS NNP\n";

Tree example_tree() { return read_ptb(kSentence)[0]; }

std::vector<std::string> serialize_all(const std::vector<Transition>& seq) {
    std::vector<std::string> out;
    for (const Transition& t : seq) out.push_back(to_string(t));
    return out;
}

std::vector<Tree> toy_corpus(int sentences, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RandomTreeParams params;
    params.min_len = 3;
    params.max_len = 9;
    params.max_arity = 4;
    params.labels = {"S", "NP", "VP", "PP"};
    params.pos_tags = {"DT", "NN", "VB", "IN", "JJ"};
    params.unary_prob = 0.15;
    std::vector<Tree> corpus;
    for (int i = 0; i < sentences; ++i) {
        params.form_prefix = "s" + std::to_string(i) + "w";
        corpus.push_back(random_tree(rng, params));
    }
    return corpus;
}

bool golden_sequences(std::string& detail) {
    Tree tree = example_tree();
    const std::vector<std::string> nonbinary = {
        "SHIFT", "SHIFT", "REDUCE-NP#2",   "SHIFT", "SHIFT",       "REDUCE-ADVP#1",
        "SHIFT", "REDUCE-ADJP#1", "REDUCE-VP#3", "SHIFT", "REDUCE-S#3", "FINISH"};
    std::vector<Transition> nb_seq = static_oracle_nonbinary(tree);
    if (serialize_all(nb_seq) != nonbinary) {
        detail = "nonbinary sequence differs";
        return false;
    }
    if (extract_tree(replay(tree_tokens(tree), nb_seq)) != tree) {
        detail = "nonbinary replay does not rebuild the tree";
        return false;
    }

    HeadRuleTable rules = HeadRuleTable::from_string(kHeadRules);
    Tree bin = binarize(tree, rules);
    const std::vector<std::string> binary = {
        "SHIFT", "SHIFT", "REDUCE-LEFT-NP", "SHIFT", "SHIFT", "REDUCE-UNARY-ADVP",
        "REDUCE-RIGHT-VP*", "SHIFT", "REDUCE-UNARY-ADJP", "REDUCE-RIGHT-VP", "SHIFT",
        "REDUCE-RIGHT-S*", "REDUCE-LEFT-S", "FINISH"};
    std::vector<Transition> bin_seq = static_oracle_binary(bin);
    if (serialize_all(bin_seq) != binary) {
        detail = "binary sequence differs";
        return false;
    }
    Tree rebuilt = extract_tree(replay(tree_tokens(tree), bin_seq));
    if (rebuilt != bin || unbinarize(rebuilt) != tree) {
        detail = "binary replay does not rebuild the tree";
        return false;
    }
    detail = "12-transition and 14-transition sequences exact";
    return true;
}

bool transition_count_law(std::string& detail) {
    std::mt19937_64 rng(101);
    RandomTreeParams params;
    params.min_len = 1;
    params.max_len = 20;
    params.max_arity = 5;
    params.unary_cap = 3;
    params.labels = {"S", "NP", "VP", "PP", "ADJP"};
    for (int i = 0; i < 500; ++i) {
        Tree t = random_tree(rng, params);
        const std::size_t expected =
            static_cast<std::size_t>(tree_length(t)) + count_internal_nodes(t) + 1;
        std::vector<Transition> seq = static_oracle_nonbinary(t);
        if (seq.size() != expected || count_transitions(t) != expected) {
            detail = "violated on tree " + std::to_string(i) + ": " + write_ptb(t);
            return false;
        }
    }
    detail = "500 random trees, n + |N| + 1 exact";
    return true;
}

bool oracle_optimality(std::string& detail) {
    AuditOptions opts;
    opts.exhaustive = true;
    opts.exhaustive_max_n = 4;
    opts.exhaustive_labels = 2;
    opts.exhaustive_depth = 8;
    opts.sampled_configs = 1000;
    opts.sampled_max_n = 6;
    opts.sampled_labels = 3;
    opts.seed = 20240501;
    AuditResult r = audit_oracle(opts);
    std::ostringstream os;
    os << r.configurations << " configurations over " << r.trees << " trees, " << r.mismatches
       << " mismatches";
    if (r.budget_skips > 0) os << " (" << r.budget_skips << " resampled on budget)";
    detail = os.str();
    if (r.first_mismatch) {
        detail += "; counterexample " + r.first_mismatch->gold_tree;
    }
    return r.mismatches == 0;
}

bool monotonicity_and_nonemptiness(std::string& detail) {
    std::mt19937_64 rng(202);
    RandomTreeParams params;
    params.min_len = 2;
    params.max_len = 8;
    params.max_arity = 4;
    params.labels = {"S", "NP", "VP"};
    std::size_t checked = 0;
    while (checked < 10000) {
        Tree t = random_tree(rng, params);
        GoldSet gold = GoldSet::from_tree(t);
        Inventory inv;
        inv.system = SystemKind::nonbinary;
        inv.any_arity = true;
        for (const auto& [cons, count] : gold.constituents) inv.labels.insert(cons.label);
        inv.labels.insert("Z");
        Configuration c = initial_configuration(tree_tokens(t));
        while (!c.finished && checked < 10000) {
            if (zero_cost_transitions(c, gold, inv).empty()) {
                detail = "empty zero-cost set at " + write_ptb(t);
                return false;
            }
            std::vector<Transition> legal_set = legal_transitions(c, inv);
            const int before = loss_value(c, gold);
            std::uniform_int_distribution<std::size_t> pick(0, legal_set.size() - 1);
            Configuration next = apply(c, legal_set[pick(rng)]);
            if (loss_value(next, gold) < before) {
                detail = "loss decreased on " + write_ptb(t);
                return false;
            }
            ++checked;
            c = std::move(next);
        }
    }
    detail = "10000 random legal transitions, zero violations";
    return true;
}

bool zero_cost_completeness(std::string& detail) {
    std::mt19937_64 rng(303);
    RandomTreeParams params;
    params.min_len = 2;
    params.max_len = 8;
    params.max_arity = 4;
    params.labels = {"S", "NP", "VP"};
    for (int i = 0; i < 200; ++i) {
        Tree t = random_tree(rng, params);
        GoldSet gold = GoldSet::from_tree(t);
        Inventory inv;
        inv.system = SystemKind::nonbinary;
        inv.any_arity = true;
        for (const auto& [cons, count] : gold.constituents) inv.labels.insert(cons.label);
        Configuration c = initial_configuration(tree_tokens(t));
        int guard = 0;
        while (!c.finished) {
            if (++guard > 300) {
                detail = "no terminal state on " + write_ptb(t);
                return false;
            }
            std::vector<Transition> zero = zero_cost_transitions(c, gold, inv);
            if (zero.empty()) {
                detail = "empty zero-cost set on " + write_ptb(t);
                return false;
            }
            std::uniform_int_distribution<std::size_t> pick(0, zero.size() - 1);
            c = apply(c, zero[pick(rng)]);
        }
        Tree result = extract_tree(c);
        EvalResult eval = evaluate({t}, {result});
        if (eval.f1 < 100.0) {
            detail = "F1 " + std::to_string(eval.f1) + " on " + write_ptb(t);
            return false;
        }
    }
    detail = "200 random gold trees end at F1 = 100";
    return true;
}

bool overfit(std::string& detail) {
    std::vector<Tree> corpus = toy_corpus(50, 404);
    std::vector<std::vector<Token>> tokens;
    for (const Tree& t : corpus) tokens.push_back(tree_tokens(t));

    TrainConfig st;
    st.epochs = 20;
    st.seed = 13;
    int converged_epoch = 0;
    double static_f1 = 0;
    LinearModel static_model =
        train(corpus, st, nullptr, [&](const LinearModel& snapshot, int epoch) {
            std::vector<Tree> predicted = parse_corpus(snapshot, tokens);
            double f1 = evaluate(corpus, predicted).f1;
            if (f1 >= 100.0) {
                converged_epoch = epoch;
                static_f1 = f1;
                return true;
            }
            return false;
        });
    if (static_f1 < 100.0) {
        std::vector<Tree> predicted = parse_corpus(static_model, tokens);
        static_f1 = evaluate(corpus, predicted).f1;
        converged_epoch = st.epochs;
    }

    // The twenty-epoch bound applies to the static clause; the dynamic run
    // explores constantly and needs more passes, still well inside the
    // two-minute budget.
    TrainConfig dy;
    dy.oracle = OracleMode::dynamic_oracle;
    dy.exploration = ExplorationPolicy::parse("aggr=1.0,reg=0.1");
    dy.epochs = 60;
    dy.seed = 13;
    LinearModel dynamic_model = train(corpus, dy);
    const double dynamic_f1 = evaluate(corpus, parse_corpus(dynamic_model, tokens)).f1;

    std::ostringstream os;
    os << "static F1 " << std::fixed << std::setprecision(2) << static_f1 << " (epoch "
       << converged_epoch << "), dynamic F1 " << dynamic_f1;
    detail = os.str();
    return static_f1 >= 100.0 && dynamic_f1 >= 99.0;
}

bool speed_advantage(std::string& detail) {
    std::vector<Tree> corpus = toy_corpus(40, 505);
    corpus.push_back(example_tree());  // guarantees a node with three children
    HeadRuleTable rules = HeadRuleTable::from_string(kHeadRules);
    SystemStats nb = transition_stats(corpus, SystemKind::nonbinary);
    SystemStats bin = transition_stats(corpus, SystemKind::binary, &rules);
    std::ostringstream os;
    os << "transitions/sentence " << std::fixed << std::setprecision(2) << nb.mean_transitions
       << " nonbinary vs " << bin.mean_transitions << " binary";
    detail = os.str();
    return nb.mean_transitions < bin.mean_transitions;
}

bool empirical_linearity(std::string& detail) {
    // model trained on short synthetic sentences, timed on lengths 5..100
    std::vector<Tree> train_corpus;
    for (int n = 3; n <= 30; n += 3) train_corpus.push_back(right_branching_tree(n));
    TrainConfig config;
    config.epochs = 2;
    config.seed = 5;
    LinearModel model = train(train_corpus, config);

    std::vector<std::vector<Token>> sentences;
    for (int n = 5; n <= 100; n += 5) {
        sentences.push_back(tree_tokens(right_branching_tree(n)));
    }
    // warm-up pass, then the measured profile
    timing_profile(model, sentences, 1);
    TimingProfile profile = timing_profile(model, sentences, 7);
    std::ostringstream os;
    os << "time ~ length fit: R^2 " << std::fixed << std::setprecision(4) << profile.r_squared
       << ", slope " << std::scientific << std::setprecision(2) << profile.slope << " s/word";
    detail = os.str();
    return profile.r_squared >= 0.9;
}

bool round_trips(std::string& detail) {
    std::mt19937_64 rng(606);
    RandomTreeParams params;
    params.min_len = 1;
    params.max_len = 12;
    params.max_arity = 5;
    params.labels = {"S", "NP", "VP", "PP", "ADVP"};
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < 1000; ++i) {
        Tree t = random_tree(rng, params);
        auto back = read_ptb(write_ptb(t));
        if (back.size() != 1 || back[0] != t) {
            detail = "bracketing round trip failed on " + write_ptb(t);
            return false;
        }
        HeadRuleTable rules;
        for (const std::string& l : params.labels) {
            HeadRuleTable::Rule rule;
            rule.direction =
                coin(rng) ? HeadRuleTable::Direction::left : HeadRuleTable::Direction::right;
            if (coin(rng)) rule.priority = {params.labels[0], "P"};
            rules.add_rule(l, rule);
        }
        if (unbinarize(binarize(t, rules)) != t) {
            detail = "binarization round trip failed on " + write_ptb(t);
            return false;
        }
    }
    detail = "1000 random trees, both identities exact";
    return true;
}

}  // namespace

int main() {
    std::cout << "acceptance suite\n================\n";
    criterion("golden-sequences", golden_sequences);
    criterion("transition-count-law", transition_count_law);
    criterion("oracle-optimality", oracle_optimality);
    criterion("loss-monotonicity", monotonicity_and_nonemptiness);
    criterion("zero-cost-completeness", zero_cost_completeness);
    criterion("overfit", overfit);
    criterion("speed-advantage", speed_advantage);
    criterion("empirical-linearity", empirical_linearity);
    criterion("round-trips", round_trips);
    std::cout << (failures == 0 ? "all criteria passed\n"
                                : std::to_string(failures) + " criteria failed\n");
    return failures == 0 ? 0 : 1;
}
