#include "nbparse/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <istream>
#include <sstream>
#include <thread>

#include "nbparse/binarize.hpp"
#include "json.hpp"

namespace nbparse {

std::string to_string(OracleMode m) {
    return m == OracleMode::static_oracle ? "static" : "dynamic";
}

OracleMode oracle_mode_from_string(const std::string& s) {
    if (s == "static") return OracleMode::static_oracle;
    if (s == "dynamic") return OracleMode::dynamic_oracle;
    throw std::runtime_error("unknown oracle '" + s + "' (expected static or dynamic)");
}

std::string TrainReport::to_json() const {
    nlohmann::json j;
    j["skipped_trees"] = skipped_trees;
    j["warnings"] = warnings;
    j["loss_violations"] = loss_violations;
    j["epochs"] = nlohmann::json::array();
    for (const EpochReport& e : epochs) {
        j["epochs"].push_back({{"epoch", e.epoch},
                               {"steps", e.steps},
                               {"updates", e.updates},
                               {"accuracy", e.accuracy},
                               {"seconds", e.seconds}});
    }
    return j.dump(2);
}

namespace {

struct TrainingInstance {
    Tree tree;                      // binarized for the binary system
    std::vector<Token> tokens;
    std::vector<Transition> gold;   // static oracle sequence
    GoldSet gold_set;               // dynamic mode
};

std::string most_frequent_root(const std::vector<Tree>& corpus) {
    std::map<std::string, int> counts;
    for (const Tree& t : corpus) ++counts[t.label];
    std::string best = "S";
    int best_count = 0;
    for (const auto& [label, count] : counts) {
        if (count > best_count) {
            best = label;
            best_count = count;
        }
    }
    return best;
}

const Transition* argmax_scored(const std::map<Transition, double>& scores,
                                const std::vector<Transition>& candidates) {
    const Transition* best = nullptr;
    double best_score = 0;
    for (const Transition& t : candidates) {
        auto it = scores.find(t);
        const double s = it == scores.end() ? 0.0 : it->second;
        if (!best || s > best_score || (s == best_score && t < *best)) {
            best = &t;
            best_score = s;
        }
    }
    return best;
}

}  // namespace

LinearModel train(const std::vector<Tree>& corpus, const TrainConfig& config, TrainReport* report,
                  const EpochHook& epoch_hook) {
    if (corpus.empty()) throw std::runtime_error("training corpus is empty");
    if (config.system == SystemKind::binary && config.oracle == OracleMode::dynamic_oracle) {
        throw std::runtime_error("the dynamic oracle is only defined for the nonbinary system");
    }
    if (config.system == SystemKind::binary && config.head_rules == nullptr) {
        throw std::runtime_error("the binary system needs a head rule table");
    }

    TrainReport local_report;
    TrainReport& rep = report ? *report : local_report;

    std::vector<TrainingInstance> instances;
    Inventory inventory;
    inventory.system = config.system;
    inventory.unary_cap = config.unary_cap;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        Tree tree = corpus[i];
        fix_spans(tree);
        std::string err = validate_tree(tree, config.unary_cap);
        if (!err.empty()) {
            ++rep.skipped_trees;
            rep.warnings.push_back("skipping tree " + std::to_string(i + 1) + ": " + err);
            continue;
        }
        TrainingInstance inst;
        inst.tokens = tree_tokens(tree);
        if (config.system == SystemKind::binary) {
            inst.tree = binarize(tree, *config.head_rules);
            inst.gold = static_oracle_binary(inst.tree);
        } else {
            inst.tree = std::move(tree);
            inst.gold = static_oracle_nonbinary(inst.tree);
            inst.gold_set = GoldSet::from_tree(inst.tree);
        }
        for (const Transition& t : inst.gold) {
            if (t.is_reduce()) inventory.add(t);
        }
        instances.push_back(std::move(inst));
    }
    if (instances.empty()) throw std::runtime_error("no usable trees in the training corpus");

    LinearModel model(config.system, inventory, most_frequent_root(corpus), config.bucket_bits);
    // Exploration may pass through stack shapes whose escape needs a reduce
    // arity never seen in gold trees; lifting the arity restriction during
    // training keeps the zero-cost set non-empty everywhere.
    const Inventory train_inventory = config.oracle == OracleMode::dynamic_oracle
                                          ? inventory.with_any_arity()
                                          : inventory;

    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order(instances.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        EpochReport er;
        er.epoch = epoch;
        std::shuffle(order.begin(), order.end(), rng);

        for (std::size_t index : order) {
            const TrainingInstance& inst = instances[index];
            Configuration c = initial_configuration(inst.tokens);

            if (config.oracle == OracleMode::static_oracle) {
                for (const Transition& gold : inst.gold) {
                    std::vector<FeatureId> feats = featurize(c, model.bucket_bits());
                    std::vector<Transition> candidates = legal_transitions(c, inventory);
                    std::map<Transition, double> scores =
                        model.score_candidates(feats, candidates);
                    const Transition* predicted = argmax_scored(scores, candidates);
                    ++er.steps;
                    model.tick();
                    if (predicted && *predicted != gold) {
                        model.update(c, gold, *predicted);
                        ++er.updates;
                    }
                    c = apply(c, gold);
                }
            } else {
                const std::size_t step_limit =
                    4 * static_cast<std::size_t>(
                            (config.unary_cap + 2) * static_cast<int>(inst.tokens.size()) + 2);
                std::size_t steps_here = 0;
                while (!c.finished) {
                    if (++steps_here > step_limit) {
                        throw std::runtime_error("dynamic training failed to terminate");
                    }
                    std::vector<FeatureId> feats = featurize(c, model.bucket_bits());
                    std::vector<Transition> candidates = legal_transitions(c, train_inventory);
                    std::vector<Transition> zero =
                        zero_cost_transitions(c, inst.gold_set, train_inventory);
                    if (zero.empty()) {
                        throw std::runtime_error(
                            "empty zero-cost set during dynamic training (oracle bug)");
                    }
                    std::map<Transition, double> scores =
                        model.score_candidates(feats, candidates);
                    const Transition* predicted = argmax_scored(scores, candidates);
                    const Transition* best_zero = argmax_scored(scores, zero);
                    ++er.steps;
                    model.tick();
                    const bool predicted_ok =
                        predicted && std::find(zero.begin(), zero.end(), *predicted) != zero.end();
                    if (!predicted_ok) {
                        model.update(c, *best_zero, *predicted);
                        ++er.updates;
                    }
                    Transition next = explore(c, scores, inst.gold_set, train_inventory,
                                              config.exploration, rng);
                    if (config.audit_losses) {
                        const int before = loss_value(c, inst.gold_set);
                        Configuration after = apply(c, next);
                        if (loss_value(after, inst.gold_set) < before) ++rep.loss_violations;
                        c = std::move(after);
                    } else {
                        c = apply(c, next);
                    }
                }
            }
        }

        er.accuracy = er.steps == 0
                          ? 0.0
                          : static_cast<double>(er.steps - er.updates) / static_cast<double>(er.steps);
        er.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.epochs.push_back(er);

        if (epoch_hook) {
            LinearModel snapshot = model;
            snapshot.finalize_average();
            if (epoch_hook(snapshot, epoch)) break;
        }
    }

    model.finalize_average();
    return model;
}

namespace {

// Candidate filter + fallbacks shared by both systems. Ensures the decode
// always makes progress and ends with a single constituent on the stack.
Transition choose_transition(const LinearModel& model, const Configuration& c) {
    std::vector<Transition> candidates = legal_transitions(c, model.inventory());
    // Never finish on a bare token: the output must be rooted in a constituent.
    if (c.stack.size() == 1 && c.stack.front().token) {
        std::erase_if(candidates,
                      [](const Transition& t) { return t.kind == TransitionKind::finish; });
    }
    if (candidates.empty()) {
        // Forced completion with the fallback root label.
        if (!c.buffer_empty()) return Transition::shift();
        const int depth = static_cast<int>(c.stack.size());
        if (model.system() == SystemKind::nonbinary) {
            return Transition::reduce(model.fallback_root(), std::max(depth, 1));
        }
        if (depth >= 2) return Transition::reduce_right(model.fallback_root());
        if (depth == 1 && c.stack.front().token) {
            return Transition::reduce_unary(model.fallback_root());
        }
        return Transition::finish();
    }
    std::vector<FeatureId> feats = featurize(c, model.bucket_bits());
    std::map<Transition, double> scores = model.score_candidates(feats, candidates);
    return *argmax_scored(scores, candidates);
}

}  // namespace

DecodeResult parse_sentence(const LinearModel& model, const std::vector<Token>& sentence) {
    Configuration c = initial_configuration(sentence);
    DecodeResult result;
    const std::size_t n = sentence.size();
    const std::size_t hard_cap =
        2 * (n + static_cast<std::size_t>(model.unary_cap()) * n + 1) + 4;
    while (!c.finished) {
        Transition t;
        if (result.transitions.size() >= hard_cap) {
            // Structurally unreachable with capped legality; close out anyway.
            if (!c.buffer_empty()) {
                t = Transition::shift();
            } else if (c.stack.size() > 1) {
                t = model.system() == SystemKind::nonbinary
                        ? Transition::reduce(model.fallback_root(),
                                             static_cast<int>(c.stack.size()))
                        : Transition::reduce_right(model.fallback_root());
            } else if (c.stack.size() == 1 && c.stack.front().token) {
                t = model.system() == SystemKind::nonbinary
                        ? Transition::reduce(model.fallback_root(), 1)
                        : Transition::reduce_unary(model.fallback_root());
            } else {
                t = Transition::finish();
            }
        } else {
            t = choose_transition(model, c);
        }
        c = apply(c, t);
        result.transitions.push_back(std::move(t));
    }
    Tree tree = extract_tree(c);
    if (model.system() == SystemKind::binary) {
        if (is_auxiliary_label(tree.label)) {
            tree.label.pop_back();
            if (tree.label.empty()) tree.label = model.fallback_root();
        }
        tree = unbinarize(tree);
    }
    result.tree = std::move(tree);
    return result;
}

std::vector<Tree> parse_corpus(const LinearModel& model,
                               const std::vector<std::vector<Token>>& sentences, int threads) {
    std::vector<Tree> out(sentences.size());
    if (threads <= 1 || sentences.size() < 2) {
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            out[i] = parse_sentence(model, sentences[i]).tree;
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= sentences.size()) return;
            out[i] = parse_sentence(model, sentences[i]).tree;
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min<int>(threads, static_cast<int>(sentences.size()));
    pool.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return out;
}

std::vector<Token> sentence_from_line(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::istringstream in(line);
    std::string item;
    while (in >> item) {
        const std::size_t cut = item.rfind('_');
        if (cut == std::string::npos || cut == 0 || cut + 1 >= item.size()) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": token '" + item +
                                     "' is not form_POS");
        }
        out.push_back(Token{item.substr(0, cut), item.substr(cut + 1)});
    }
    return out;
}

std::vector<std::vector<Token>> sentences_from_stream(std::istream& in) {
    std::vector<std::vector<Token>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<Token> sentence = sentence_from_line(line, lineno);
        if (!sentence.empty()) out.push_back(std::move(sentence));
    }
    return out;
}

}  // namespace nbparse
