#include "nbparse/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbparse/binarize.hpp"
#include "nbparse/evaluator.hpp"
#include "nbparse/oracle.hpp"
#include "nbparse/ptb.hpp"
#include "nbparse/trainer.hpp"

namespace nbparse {

namespace {

class UsageError : public std::runtime_error {
  public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TrainArgs {
    std::string system = "nonbinary";
    std::string oracle = "static";
    std::string explore_spec;
    int epochs = 10;
    std::uint64_t seed = 1;
    int unary_cap = 3;
    int bucket_bits = 22;
    std::string head_rules_path;
    std::string input;
    std::string output;
    std::string report_path;
};

int cmd_train(const TrainArgs& args, std::ostream& out) {
    TrainConfig config;
    config.system = system_from_string(args.system);
    config.oracle = oracle_mode_from_string(args.oracle);
    if (config.system == SystemKind::binary && config.oracle == OracleMode::dynamic_oracle) {
        throw UsageError("the binary system has no dynamic oracle; use --oracle static");
    }
    config.exploration = ExplorationPolicy::parse(args.explore_spec);
    config.epochs = args.epochs;
    config.seed = args.seed;
    config.unary_cap = args.unary_cap;
    config.bucket_bits = args.bucket_bits;
    HeadRuleTable rules;
    if (config.system == SystemKind::binary) {
        if (args.head_rules_path.empty()) {
            throw UsageError("the binary system needs --head-rules");
        }
        rules = HeadRuleTable::from_file(args.head_rules_path);
        config.head_rules = &rules;
    }

    std::vector<Tree> corpus = read_ptb_file(args.input);
    out << "read " << corpus.size() << " trees from " << args.input << "\n";

    TrainReport report;
    LinearModel model = train(corpus, config, &report);
    for (const EpochReport& e : report.epochs) {
        out << "epoch " << e.epoch << ": steps=" << e.steps << " updates=" << e.updates
            << " accuracy=" << std::fixed << std::setprecision(2) << 100 * e.accuracy << "%"
            << " (" << std::setprecision(2) << e.seconds << "s)\n";
    }
    if (report.skipped_trees > 0) {
        out << "skipped " << report.skipped_trees << " trees\n";
        for (const std::string& w : report.warnings) out << "  " << w << "\n";
    }
    model.save(args.output);
    out << "model written to " << args.output << "\n";
    if (!args.report_path.empty()) {
        std::ofstream rf(args.report_path);
        if (!rf) throw std::runtime_error("cannot write report: " + args.report_path);
        rf << report.to_json() << "\n";
    }
    return 0;
}

struct ParseArgs {
    std::string model_path;
    std::string input;
    std::string output;
    std::string trace_path;
    std::string timing_path;
    int threads = 1;
    int timing_reps = 3;
};

int cmd_parse(const ParseArgs& args, std::ostream& out) {
    LinearModel model = LinearModel::load(args.model_path);

    std::vector<std::vector<Token>> sentences;
    if (args.input.empty() || args.input == "-") {
        sentences = sentences_from_stream(std::cin);
    } else {
        std::ifstream in(args.input);
        if (!in) throw std::runtime_error("cannot open input: " + args.input);
        sentences = sentences_from_stream(in);
    }

    std::ofstream file_out;
    std::ostream* sink = &out;
    if (!args.output.empty() && args.output != "-") {
        file_out.open(args.output);
        if (!file_out) throw std::runtime_error("cannot open output: " + args.output);
        sink = &file_out;
    }

    if (!args.trace_path.empty() || args.threads <= 1) {
        std::ofstream trace;
        if (!args.trace_path.empty()) {
            trace.open(args.trace_path);
            if (!trace) throw std::runtime_error("cannot open trace file: " + args.trace_path);
        }
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            DecodeResult result = parse_sentence(model, sentences[i]);
            *sink << write_ptb(result.tree) << "\n";
            if (trace.is_open()) {
                if (i > 0) trace << "\n";
                for (const Transition& t : result.transitions) trace << to_string(t) << "\n";
            }
        }
    } else {
        std::vector<Tree> trees = parse_corpus(model, sentences, args.threads);
        for (const Tree& t : trees) *sink << write_ptb(t) << "\n";
    }

    if (!args.timing_path.empty()) {
        TimingProfile profile = timing_profile(model, sentences, args.timing_reps);
        std::ofstream tf(args.timing_path);
        if (!tf) throw std::runtime_error("cannot open timing file: " + args.timing_path);
        tf << "# slope=" << profile.slope << " intercept=" << profile.intercept
           << " r_squared=" << profile.r_squared
           << " sentences_per_second=" << profile.sentences_per_second << "\n";
        tf << "length,seconds\n";
        for (const TimingRecord& r : profile.records) tf << r.length << "," << r.seconds << "\n";
    }
    return 0;
}

struct EvalArgs {
    std::string gold_path;
    std::string pred_path;
    bool by_arity = false;
    std::string json_path;
};

int cmd_eval(const EvalArgs& args, std::ostream& out) {
    std::vector<Tree> gold = read_ptb_file(args.gold_path);
    std::vector<Tree> pred = read_ptb_file(args.pred_path);
    EvalResult result = evaluate(gold, pred);
    out << std::fixed << std::setprecision(2);
    out << "labeled precision: " << result.precision << " (" << result.matched << "/"
        << result.predicted_total << ")\n";
    out << "labeled recall:    " << result.recall << " (" << result.matched << "/"
        << result.gold_total << ")\n";
    out << "labeled F1:        " << result.f1 << "\n";
    if (args.by_arity) {
        out << "arity  gold  pred  match     F1\n";
        for (const auto& [arity, b] : result.by_arity) {
            out << std::setw(4) << arity << (arity == 5 ? "+" : " ") << std::setw(6) << b.gold
                << std::setw(6) << b.predicted << std::setw(7) << b.matched << std::setw(7)
                << b.f1 << "\n";
        }
    }
    if (!args.json_path.empty()) {
        std::ofstream jf(args.json_path);
        if (!jf) throw std::runtime_error("cannot write " + args.json_path);
        jf << result.to_json() << "\n";
    }
    return 0;
}

struct AuditArgs {
    int samples = 1000;
    int max_n = 6;
    int num_labels = 3;
    int max_depth = 8;
    std::uint64_t seed = 1;
    int unary_cap = 3;
    bool exhaustive = false;
    int exhaustive_max_n = 4;
    int exhaustive_labels = 2;
    std::size_t state_budget = 4000000;
    std::string json_path;
};

int cmd_audit(const AuditArgs& args, std::ostream& out) {
    AuditOptions options;
    options.exhaustive = args.exhaustive;
    options.exhaustive_max_n = args.exhaustive_max_n;
    options.exhaustive_labels = args.exhaustive_labels;
    options.exhaustive_depth = args.max_depth;
    options.sampled_configs = args.samples;
    options.sampled_max_n = args.max_n;
    options.sampled_labels = args.num_labels;
    options.seed = args.seed;
    options.unary_cap = args.unary_cap;
    options.state_budget = args.state_budget;

    AuditResult result = audit_oracle(options);
    out << "audited " << result.configurations << " configurations over " << result.trees
        << " trees: " << result.mismatches << " mismatches";
    if (result.budget_skips > 0) out << " (" << result.budget_skips << " skipped on budget)";
    out << "\n";
    if (result.first_mismatch) {
        const AuditCounterexample& ce = *result.first_mismatch;
        out << "counterexample:\n";
        out << "  sentence: " << ce.sentence << "\n";
        out << "  gold: " << ce.gold_tree << "\n";
        out << "  transitions:";
        for (const std::string& t : ce.transitions) out << " " << t;
        out << "\n";
        out << "  oracle loss " << ce.oracle_loss << ", exact loss " << ce.exact_loss << "\n";
    }
    if (!args.json_path.empty()) {
        nlohmann::json j;
        j["trees"] = result.trees;
        j["configurations"] = result.configurations;
        j["mismatches"] = result.mismatches;
        j["budget_skips"] = result.budget_skips;
        if (result.first_mismatch) {
            const AuditCounterexample& ce = *result.first_mismatch;
            j["counterexample"] = {{"sentence", ce.sentence},
                                   {"gold", ce.gold_tree},
                                   {"transitions", ce.transitions},
                                   {"oracle_loss", ce.oracle_loss},
                                   {"exact_loss", ce.exact_loss}};
        }
        std::ofstream jf(args.json_path);
        if (!jf) throw std::runtime_error("cannot write " + args.json_path);
        jf << j.dump(2) << "\n";
    }
    return result.mismatches == 0 ? 0 : 3;
}

struct StatsArgs {
    std::string corpus_path;
    std::string head_rules_path;
    std::string json_path;
};

int cmd_stats(const StatsArgs& args, std::ostream& out) {
    std::vector<Tree> corpus = read_ptb_file(args.corpus_path);
    HeadRuleTable rules;
    if (!args.head_rules_path.empty()) rules = HeadRuleTable::from_file(args.head_rules_path);
    SystemStats nb = transition_stats(corpus, SystemKind::nonbinary);
    SystemStats bin = transition_stats(corpus, SystemKind::binary, &rules);
    out << std::fixed << std::setprecision(2);
    out << "sentences: " << nb.sentences << "\n";
    out << "transitions/sentence nonbinary: " << nb.mean_transitions << " (total "
        << nb.total_transitions << ")\n";
    out << "transitions/sentence binary:    " << bin.mean_transitions << " (total "
        << bin.total_transitions << ")\n";
    if (!args.json_path.empty()) {
        nlohmann::json j;
        j["sentences"] = nb.sentences;
        j["nonbinary"] = {{"mean", nb.mean_transitions}, {"total", nb.total_transitions}};
        j["binary"] = {{"mean", bin.mean_transitions}, {"total", bin.total_transitions}};
        std::ofstream jf(args.json_path);
        if (!jf) throw std::runtime_error("cannot write " + args.json_path);
        jf << j.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"shift-reduce constituency parser with a non-binary bottom-up system"};
    app.set_config("--config");
    app.require_subcommand(1);

    TrainArgs train_args;
    CLI::App* train_cmd = app.add_subcommand("train", "train a model on a bracketed treebank");
    train_cmd->add_option("--system", train_args.system, "nonbinary | binary")
        ->check(CLI::IsMember({"nonbinary", "binary"}));
    train_cmd->add_option("--oracle", train_args.oracle, "static | dynamic")
        ->check(CLI::IsMember({"static", "dynamic"}));
    train_cmd->add_option("--explore", train_args.explore_spec,
                          "exploration policy, e.g. aggr=1.0,reg=0.1");
    train_cmd->add_option("--epochs", train_args.epochs)->check(CLI::PositiveNumber);
    train_cmd->add_option("--seed", train_args.seed);
    train_cmd->add_option("--unary-cap", train_args.unary_cap)->check(CLI::PositiveNumber);
    train_cmd->add_option("--bucket-bits", train_args.bucket_bits);
    train_cmd->add_option("--head-rules", train_args.head_rules_path,
                          "head rule table (binary system)");
    train_cmd->add_option("--report", train_args.report_path, "write a JSON training report");
    train_cmd->add_option("input", train_args.input, "training treebank (.ptb)")->required();
    train_cmd->add_option("-o,--output", train_args.output, "model file")->required();

    ParseArgs parse_args;
    CLI::App* parse_cmd = app.add_subcommand("parse", "parse form_POS sentences, one per line");
    parse_cmd->add_option("-m,--model", parse_args.model_path)->required();
    parse_cmd->add_option("input", parse_args.input, "sentence file ('-' = stdin)");
    parse_cmd->add_option("-o,--output", parse_args.output, "tree output ('-' = stdout)");
    parse_cmd->add_option("--trace", parse_args.trace_path,
                          "write per-sentence transition sequences to this file");
    parse_cmd->add_option("--timing", parse_args.timing_path,
                          "write a per-sentence timing profile to this file");
    parse_cmd->add_option("--timing-reps", parse_args.timing_reps)->check(CLI::PositiveNumber);
    parse_cmd->add_option("--threads", parse_args.threads)->check(CLI::PositiveNumber);

    EvalArgs eval_args;
    CLI::App* eval_cmd = app.add_subcommand("eval", "labeled bracketing evaluation");
    eval_cmd->add_option("gold", eval_args.gold_path)->required();
    eval_cmd->add_option("predicted", eval_args.pred_path)->required();
    eval_cmd->add_flag("--by-arity", eval_args.by_arity, "per-arity F1 buckets");
    eval_cmd->add_option("--json", eval_args.json_path);

    AuditArgs audit_args;
    CLI::App* audit_cmd =
        app.add_subcommand("audit", "check the oracle loss against exhaustive search");
    audit_cmd->add_option("--samples", audit_args.samples);
    audit_cmd->add_option("--max-n", audit_args.max_n)->check(CLI::PositiveNumber);
    audit_cmd->add_option("--num-labels", audit_args.num_labels)->check(CLI::PositiveNumber);
    audit_cmd->add_option("--max-depth", audit_args.max_depth)->check(CLI::PositiveNumber);
    audit_cmd->add_option("--seed", audit_args.seed);
    audit_cmd->add_option("--unary-cap", audit_args.unary_cap)->check(CLI::PositiveNumber);
    audit_cmd->add_flag("--exhaustive", audit_args.exhaustive,
                        "also enumerate all small trees exhaustively");
    audit_cmd->add_option("--exhaustive-max-n", audit_args.exhaustive_max_n);
    audit_cmd->add_option("--exhaustive-labels", audit_args.exhaustive_labels);
    audit_cmd->add_option("--state-budget", audit_args.state_budget);
    audit_cmd->add_option("--json", audit_args.json_path);

    StatsArgs stats_args;
    CLI::App* stats_cmd = app.add_subcommand("stats", "transition statistics per system");
    stats_cmd->add_option("corpus", stats_args.corpus_path)->required();
    stats_cmd->add_option("--head-rules", stats_args.head_rules_path);
    stats_cmd->add_option("--json", stats_args.json_path);

    std::vector<std::string> argv(args);
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (train_cmd->parsed()) return cmd_train(train_args, out);
        if (parse_cmd->parsed()) return cmd_parse(parse_args, out);
        if (eval_cmd->parsed()) return cmd_eval(eval_args, out);
        if (audit_cmd->parsed()) return cmd_audit(audit_args, out);
        if (stats_cmd->parsed()) return cmd_stats(stats_args, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace nbparse
