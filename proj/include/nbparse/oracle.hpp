#ifndef NBPARSE_ORACLE_HPP
#define NBPARSE_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "nbparse/system.hpp"

namespace nbparse {

// Gold constituents of one sentence, as a keyed multiset (see Constituent).
struct GoldSet {
    Gamma constituents;
    int sentence_length = 0;

    static GoldSet from_tree(const Tree& tree);
};

struct ReachabilityReport {
    Gamma reachable;
    Gamma unreachable;
    Gamma false_positives;
    int loss = 0;
};

// Test hooks: individual reachability conditions can be switched off to show
// the audit catches a broken oracle. All on by default.
struct ReachabilityOptions {
    bool built_condition = true;        // already created
    bool buffer_condition = true;       // span entirely unread
    bool stack_condition = true;        // left-anchored on a stack endpoint
    bool same_span_refinement = true;   // chain-position check when end == buffer index
};

// A gold constituent is individually reachable iff it was already built, its
// span is still entirely in the buffer, or its left endpoint coincides with a
// stack item's and its right endpoint has not been read past. When the span
// ends exactly at the buffer index and only the topmost item is involved, only
// chain positions above the top item's remain constructible; that refinement
// keeps the loss exact under the keyed multiset.
bool is_reachable(const Configuration& c, const Constituent& g,
                  const ReachabilityOptions& opts = {});

// loss(c) = |unreachable gold| + |built non-gold|. Token-level constituents
// never enter either term. On finished configurations only built gold counts
// as reachable.
ReachabilityReport loss_report(const Configuration& c, const GoldSet& gold,
                               const ReachabilityOptions& opts = {});
int loss_value(const Configuration& c, const GoldSet& gold, const ReachabilityOptions& opts = {});

// Legal transitions that do not increase the loss. Non-empty for every
// configuration reachable by legal transitions when the inventory does not
// restrict reduce arities.
std::vector<Transition> zero_cost_transitions(const Configuration& c, const GoldSet& gold,
                                              const Inventory& inv,
                                              const ReachabilityOptions& opts = {});

// Exhaustive minimum symmetric-difference loss over all legal completions,
// memoized per gold set. Used as the independent reference the analytic loss
// is checked against.
class ExactLossSearch {
  public:
    ExactLossSearch(GoldSet gold, Inventory legality, std::size_t state_budget = 4000000);

    // nullopt when the state budget was exhausted.
    std::optional<int> min_loss(const Configuration& c);
    std::size_t states_explored() const { return memo_.size(); }

    const GoldSet& gold() const { return gold_; }
    const Inventory& legality() const { return legality_; }

  private:
    int future_loss(const Configuration& c);
    std::string state_key(const Configuration& c) const;
    std::uint64_t built_mask(const Configuration& c) const;

    GoldSet gold_;
    Inventory legality_;
    std::size_t budget_;
    std::map<Constituent, int> gold_bits_;
    std::unordered_map<std::string, int> memo_;
};

// One-shot form; `state_budget` bounds the explored state count.
std::optional<int> brute_force_min_loss(const Configuration& c, const GoldSet& gold,
                                        const Inventory& legality,
                                        std::size_t state_budget = 4000000);

// Error-exploration policy: follow the best non-zero-cost transition when it
// scores within `margin` of the best zero-cost one, or, when it outscores it,
// with probability `prob`.
struct ExplorationPolicy {
    std::optional<double> margin;  // aggressive criterion
    std::optional<double> prob;    // regular criterion

    static ExplorationPolicy parse(const std::string& spec);  // "aggr=1.0,reg=0.1"
    std::string to_string() const;
};

// Picks the next transition during exploration training. `scores` must cover
// every legal transition. Ties break canonically; the RNG is drawn from only
// when the regular criterion needs it.
Transition explore(const Configuration& c, const std::map<Transition, double>& scores,
                   const GoldSet& gold, const Inventory& inv, const ExplorationPolicy& policy,
                   std::mt19937_64& rng);

// Oracle audit: checks loss_value against ExactLossSearch over exhaustively
// enumerated small trees and over randomly sampled configurations.
struct AuditOptions {
    bool exhaustive = true;
    int exhaustive_max_n = 4;
    int exhaustive_labels = 2;
    int exhaustive_depth = 8;

    int sampled_configs = 1000;
    int sampled_max_n = 6;
    int sampled_labels = 3;

    int unary_cap = 3;
    std::uint64_t seed = 1;
    std::size_t state_budget = 4000000;
    ReachabilityOptions reachability{};
};

struct AuditCounterexample {
    std::string sentence;
    std::string gold_tree;
    std::vector<std::string> transitions;  // prefix from the initial configuration
    int oracle_loss = 0;
    int exact_loss = 0;
};

struct AuditResult {
    std::size_t trees = 0;
    std::size_t configurations = 0;
    std::size_t mismatches = 0;
    std::size_t budget_skips = 0;
    std::optional<AuditCounterexample> first_mismatch;

    bool ok() const { return mismatches == 0; }
};

AuditResult audit_oracle(const AuditOptions& options);

}  // namespace nbparse

#endif
