#ifndef NBPARSE_EVALUATOR_HPP
#define NBPARSE_EVALUATOR_HPP

#include <map>
#include <string>
#include <vector>

#include "nbparse/head_rules.hpp"
#include "nbparse/model.hpp"
#include "nbparse/tree.hpp"

namespace nbparse {

struct ArityBucket {
    std::size_t gold = 0;
    std::size_t predicted = 0;
    std::size_t matched = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

// Labeled bracketing scores in percent. Brackets are all internal nodes
// (root included, no punctuation or label-equivalence rules), matched as a
// multiset of (label, span). Arity buckets additionally key the bracket by
// its child count, 5 standing for five or more.
struct EvalResult {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::size_t matched = 0;
    std::size_t gold_total = 0;
    std::size_t predicted_total = 0;
    std::map<int, ArityBucket> by_arity;
    // Filled by pipelines that measure them; evaluate() leaves them zero.
    double mean_transitions = 0;
    double sentences_per_second = 0;

    std::string to_json() const;
};

// Throws on length or token-count mismatches, naming the sentence index.
EvalResult evaluate(const std::vector<Tree>& gold, const std::vector<Tree>& predicted);

std::map<int, ArityBucket> arity_f1(const std::vector<Tree>& gold,
                                    const std::vector<Tree>& predicted);

struct SystemStats {
    std::size_t sentences = 0;
    std::size_t total_transitions = 0;
    double mean_transitions = 0;
};

// Mean gold transition sequence length per sentence. The binary system
// needs head rules (its sequences are taken over binarized trees).
SystemStats transition_stats(const std::vector<Tree>& corpus, SystemKind system,
                             const HeadRuleTable* rules = nullptr);

struct TimingRecord {
    int length = 0;
    double seconds = 0;
};

struct TimingProfile {
    std::vector<TimingRecord> records;
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    double sentences_per_second = 0;
};

// Wall-clock decode time per sentence plus a least-squares fit of time
// against length. With repetitions > 1 the fastest run is kept.
TimingProfile timing_profile(const LinearModel& model,
                             const std::vector<std::vector<Token>>& sentences,
                             int repetitions = 1);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

LinearFit least_squares_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace nbparse

#endif
