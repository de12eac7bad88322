#ifndef NBPARSE_TRAINER_HPP
#define NBPARSE_TRAINER_HPP

#include <functional>
#include <string>
#include <vector>

#include "nbparse/head_rules.hpp"
#include "nbparse/model.hpp"
#include "nbparse/oracle.hpp"
#include "nbparse/system.hpp"

namespace nbparse {

enum class OracleMode { static_oracle, dynamic_oracle };

std::string to_string(OracleMode m);
OracleMode oracle_mode_from_string(const std::string& s);

struct TrainConfig {
    SystemKind system = SystemKind::nonbinary;
    OracleMode oracle = OracleMode::static_oracle;
    ExplorationPolicy exploration;
    int epochs = 10;
    std::uint64_t seed = 1;
    int unary_cap = 3;
    int bucket_bits = 22;
    const HeadRuleTable* head_rules = nullptr;  // binary system only
    // Recompute the oracle loss before and after every followed transition
    // and count decreases (monotonicity instrumentation; slows training).
    bool audit_losses = false;
};

struct EpochReport {
    int epoch = 0;
    std::size_t steps = 0;
    std::size_t updates = 0;
    double accuracy = 0;  // fraction of steps where the model already agreed
    double seconds = 0;
};

struct TrainReport {
    std::vector<EpochReport> epochs;
    std::size_t skipped_trees = 0;
    std::vector<std::string> warnings;
    std::size_t loss_violations = 0;  // only with audit_losses
    std::string to_json() const;
};

// Called after each epoch with a finalized snapshot; return true to stop.
using EpochHook = std::function<bool(const LinearModel&, int epoch)>;

// Greedy online training. Static mode replays gold sequences and always
// follows gold; dynamic mode (non-binary only) updates toward the best
// zero-cost transition and follows the exploration policy. Trees violating
// the unary cap are skipped and counted. Reproducible for a fixed seed.
LinearModel train(const std::vector<Tree>& corpus, const TrainConfig& config,
                  TrainReport* report = nullptr, const EpochHook& epoch_hook = {});

struct DecodeResult {
    Tree tree;
    std::vector<Transition> transitions;
};

// Greedy decoding with the fallback rules that guarantee a well-formed tree:
// at most one constituent per decision, forced full-stack reduces with the
// model's fallback root label when nothing legal remains, binary output
// unbinarized. Terminates within 2 * (n + unary_cap * n + 1) transitions.
DecodeResult parse_sentence(const LinearModel& model, const std::vector<Token>& sentence);

std::vector<Tree> parse_corpus(const LinearModel& model,
                               const std::vector<std::vector<Token>>& sentences, int threads = 1);

// "form_POS" tokens, last underscore splits. Throws on malformed tokens,
// naming the 1-based line.
std::vector<Token> sentence_from_line(const std::string& line, int lineno = 1);
std::vector<std::vector<Token>> sentences_from_stream(std::istream& in);

}  // namespace nbparse

#endif
