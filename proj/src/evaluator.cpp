#include "nbparse/evaluator.hpp"

#include <chrono>

#include "nbparse/binarize.hpp"
#include "nbparse/trainer.hpp"
#include "json.hpp"

namespace nbparse {

namespace {

struct Bracket {
    std::string label;
    int begin = 0;
    int end = 0;

    bool operator<(const Bracket& o) const {
        if (begin != o.begin) return begin < o.begin;
        if (end != o.end) return end < o.end;
        return label < o.label;
    }
};

int arity_bucket(std::size_t children) { return children >= 5 ? 5 : static_cast<int>(children); }

void collect_brackets(const Tree& t, std::map<Bracket, int>& plain,
                      std::map<std::pair<int, Bracket>, int>& by_arity) {
    if (t.is_leaf()) return;
    Bracket b{t.label, t.begin, t.end};
    ++plain[b];
    ++by_arity[{arity_bucket(t.children.size()), b}];
    for (const Tree& c : t.children) collect_brackets(c, plain, by_arity);
}

template <typename K>
std::size_t intersection_size(const std::map<K, int>& a, const std::map<K, int>& b) {
    std::size_t n = 0;
    for (const auto& [k, count] : a) {
        auto it = b.find(k);
        if (it != b.end()) n += static_cast<std::size_t>(std::min(count, it->second));
    }
    return n;
}

template <typename K>
std::size_t multiset_size(const std::map<K, int>& a) {
    std::size_t n = 0;
    for (const auto& [k, count] : a) n += static_cast<std::size_t>(count);
    return n;
}

double percent(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

double f1_of(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

void check_alignment(const std::vector<Tree>& gold, const std::vector<Tree>& predicted) {
    if (gold.size() != predicted.size()) {
        throw std::runtime_error("gold has " + std::to_string(gold.size()) +
                                 " sentences, predictions " + std::to_string(predicted.size()));
    }
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (tree_length(gold[i]) != tree_length(predicted[i])) {
            throw std::runtime_error("token count mismatch at sentence " + std::to_string(i + 1));
        }
    }
}

}  // namespace

std::string EvalResult::to_json() const {
    nlohmann::json j;
    j["precision"] = precision;
    j["recall"] = recall;
    j["f1"] = f1;
    j["matched"] = matched;
    j["gold"] = gold_total;
    j["predicted"] = predicted_total;
    nlohmann::json buckets = nlohmann::json::object();
    for (const auto& [arity, b] : by_arity) {
        buckets[std::to_string(arity)] = {{"gold", b.gold},
                                          {"predicted", b.predicted},
                                          {"matched", b.matched},
                                          {"precision", b.precision},
                                          {"recall", b.recall},
                                          {"f1", b.f1}};
    }
    j["by_arity"] = buckets;
    if (mean_transitions > 0) j["mean_transitions"] = mean_transitions;
    if (sentences_per_second > 0) j["sentences_per_second"] = sentences_per_second;
    return j.dump(2);
}

EvalResult evaluate(const std::vector<Tree>& gold, const std::vector<Tree>& predicted) {
    check_alignment(gold, predicted);
    EvalResult result;
    std::map<int, ArityBucket> buckets;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        Tree g = gold[i];
        Tree p = predicted[i];
        fix_spans(g);
        fix_spans(p);
        std::map<Bracket, int> gold_plain, pred_plain;
        std::map<std::pair<int, Bracket>, int> gold_arity, pred_arity;
        collect_brackets(g, gold_plain, gold_arity);
        collect_brackets(p, pred_plain, pred_arity);
        result.matched += intersection_size(gold_plain, pred_plain);
        result.gold_total += multiset_size(gold_plain);
        result.predicted_total += multiset_size(pred_plain);
        for (const auto& [key, count] : gold_arity) buckets[key.first].gold += count;
        for (const auto& [key, count] : pred_arity) buckets[key.first].predicted += count;
        for (const auto& [key, count] : gold_arity) {
            auto it = pred_arity.find(key);
            if (it != pred_arity.end()) {
                buckets[key.first].matched +=
                    static_cast<std::size_t>(std::min(count, it->second));
            }
        }
    }
    result.precision = percent(result.matched, result.predicted_total);
    result.recall = percent(result.matched, result.gold_total);
    result.f1 = f1_of(result.precision, result.recall);
    for (auto& [arity, b] : buckets) {
        b.precision = percent(b.matched, b.predicted);
        b.recall = percent(b.matched, b.gold);
        b.f1 = f1_of(b.precision, b.recall);
    }
    result.by_arity = std::move(buckets);
    return result;
}

std::map<int, ArityBucket> arity_f1(const std::vector<Tree>& gold,
                                    const std::vector<Tree>& predicted) {
    return evaluate(gold, predicted).by_arity;
}

SystemStats transition_stats(const std::vector<Tree>& corpus, SystemKind system,
                             const HeadRuleTable* rules) {
    SystemStats stats;
    HeadRuleTable empty_rules;
    for (const Tree& t : corpus) {
        Tree tree = t;
        fix_spans(tree);
        std::size_t length;
        if (system == SystemKind::nonbinary) {
            length = count_transitions(tree);
        } else {
            Tree bin = binarize(tree, rules ? *rules : empty_rules);
            length = static_cast<std::size_t>(tree_length(bin)) + count_internal_nodes(bin) + 1;
        }
        stats.total_transitions += length;
        ++stats.sentences;
    }
    stats.mean_transitions =
        stats.sentences == 0
            ? 0.0
            : static_cast<double>(stats.total_transitions) / static_cast<double>(stats.sentences);
    return stats;
}

LinearFit least_squares_fit(const std::vector<std::pair<double, double>>& points) {
    LinearFit fit;
    const double n = static_cast<double>(points.size());
    if (points.size() < 2) {
        fit.r_squared = points.empty() ? 0 : 1;
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) {
        fit.intercept = sy / n;
        fit.r_squared = 0;
        return fit;
    }
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (const auto& [x, y] : points) {
        const double e = y - (fit.slope * x + fit.intercept);
        ss_res += e * e;
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    fit.r_squared = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

TimingProfile timing_profile(const LinearModel& model,
                             const std::vector<std::vector<Token>>& sentences, int repetitions) {
    TimingProfile profile;
    double total = 0;
    for (const std::vector<Token>& sentence : sentences) {
        double best = 0;
        for (int r = 0; r < std::max(repetitions, 1); ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            parse_sentence(model, sentence);
            const double dt =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (r == 0 || dt < best) best = dt;
        }
        profile.records.push_back({static_cast<int>(sentence.size()), best});
        total += best;
    }
    std::vector<std::pair<double, double>> points;
    points.reserve(profile.records.size());
    for (const TimingRecord& r : profile.records) {
        points.emplace_back(static_cast<double>(r.length), r.seconds);
    }
    const LinearFit fit = least_squares_fit(points);
    profile.slope = fit.slope;
    profile.intercept = fit.intercept;
    profile.r_squared = fit.r_squared;
    profile.sentences_per_second =
        total > 0 ? static_cast<double>(profile.records.size()) / total : 0;
    return profile;
}

}  // namespace nbparse
