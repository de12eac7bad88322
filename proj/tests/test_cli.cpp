#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nbparse/cli.hpp"
#include "nbparse/ptb.hpp"

using namespace nbparse;
namespace fs = std::filesystem;

namespace {

const char* kSentence =
    "(S (NP (DT The) (NN public)) (VP (VBZ is) (ADVP (RB still)) (ADJP (JJ cautious))) (. .))";

struct Workspace {
    fs::path dir;
    Workspace() {
        dir = fs::temp_directory_path() /
              ("nbparse-test-" + std::to_string(::getpid()) + "-" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    void write(const std::string& name, const std::string& content) const {
        std::ofstream out(path(name));
        out << content;
    }
    std::string read(const std::string& name) const {
        std::ifstream in(path(name));
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
};

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("help exits cleanly") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"train", "--help"}).code == 0);
}

TEST_CASE("usage errors exit with code two") {
    CHECK(run({}).code == 2);
    CHECK(run({"train"}).code == 2);                       // missing required options
    CHECK(run({"frobnicate"}).code == 2);                  // unknown subcommand
    CHECK(run({"train", "--system", "ternary", "x", "-o", "y"}).code == 2);
}

TEST_CASE("train, parse with trace, eval round trip on the running example") {
    Workspace ws;
    ws.write("train.ptb", std::string(kSentence) + "\n");
    ws.write("input.txt", "The_DT public_NN is_VBZ still_RB cautious_JJ ._.\n");

    CliRun trained = run({"train", "--system", "nonbinary", "--oracle", "static", "--epochs",
                          "12", "--seed", "7", ws.path("train.ptb"), "-o", ws.path("model.bin"),
                          "--report", ws.path("report.json")});
    CAPTURE(trained.err);
    CHECK(trained.code == 0);
    CHECK(fs::exists(ws.path("model.bin")));
    CHECK(ws.read("report.json").find("\"epochs\"") != std::string::npos);
    CHECK(trained.out.find("epoch 1:") != std::string::npos);

    CliRun parsed = run({"parse", "-m", ws.path("model.bin"), ws.path("input.txt"), "-o",
                         ws.path("out.ptb"), "--trace", ws.path("trace.txt")});
    CAPTURE(parsed.err);
    CHECK(parsed.code == 0);
    CHECK(ws.read("out.ptb") == std::string(kSentence) + "\n");
    CHECK(ws.read("trace.txt") ==
          "SHIFT\nSHIFT\nREDUCE-NP#2\nSHIFT\nSHIFT\nREDUCE-ADVP#1\nSHIFT\nREDUCE-ADJP#1\n"
          "REDUCE-VP#3\nSHIFT\nREDUCE-S#3\nFINISH\n");

    CliRun eval = run({"eval", ws.path("train.ptb"), ws.path("out.ptb"), "--by-arity", "--json",
                       ws.path("eval.json")});
    CHECK(eval.code == 0);
    CHECK(eval.out.find("labeled F1:        100.00") != std::string::npos);
    CHECK(ws.read("eval.json").find("\"f1\": 100.0") != std::string::npos);
}

TEST_CASE("identical seeds give byte-identical models") {
    Workspace ws;
    std::string corpus;
    corpus += "(S (NP (DT a) (NN b)) (VP (VB c) (NP (DT d) (NN e))))\n";
    corpus += "(S (NP (NN f)) (VP (VB g) (PP (IN h) (NP (NN i)))))\n";
    ws.write("train.ptb", corpus);
    auto args = std::vector<std::string>{
        "train", "--oracle", "dynamic", "--explore", "aggr=1.0,reg=0.1",
        "--epochs", "5", "--seed", "99", ws.path("train.ptb"), "-o", ""};
    args.back() = ws.path("m1.bin");
    CHECK(run(args).code == 0);
    args.back() = ws.path("m2.bin");
    CHECK(run(args).code == 0);
    CHECK(ws.read("m1.bin") == ws.read("m2.bin"));
    CHECK(!ws.read("m1.bin").empty());
}

TEST_CASE("invalid combination and io failures use distinct exit codes") {
    Workspace ws;
    ws.write("train.ptb", std::string(kSentence) + "\n");
    ws.write("rules.txt", "S left VP\n");

    // binary + dynamic is a validation error
    CliRun combo = run({"train", "--system", "binary", "--oracle", "dynamic", "--head-rules",
                        ws.path("rules.txt"), ws.path("train.ptb"), "-o", ws.path("m.bin")});
    CHECK(combo.code == 2);
    CHECK(combo.err.find("dynamic") != std::string::npos);

    // binary without head rules is a validation error
    CliRun no_rules = run({"train", "--system", "binary", ws.path("train.ptb"), "-o",
                           ws.path("m.bin")});
    CHECK(no_rules.code == 2);

    // missing files are I/O errors
    CHECK(run({"train", ws.path("absent.ptb"), "-o", ws.path("m.bin")}).code == 1);
    CHECK(run({"parse", "-m", ws.path("absent.bin"), ws.path("train.ptb")}).code == 1);
    CHECK(run({"eval", ws.path("absent.ptb"), ws.path("absent.ptb")}).code == 1);
}

TEST_CASE("binary system training works end to end") {
    Workspace ws;
    ws.write("train.ptb", std::string(kSentence) + "\n");
    ws.write("rules.txt", "S left VP\nVP left VBZ VBD VBP VB MD\nNP right NN NNS NNP\n");
    ws.write("input.txt", "The_DT public_NN is_VBZ still_RB cautious_JJ ._.\n");
    CliRun trained = run({"train", "--system", "binary", "--head-rules", ws.path("rules.txt"),
                          "--epochs", "12", ws.path("train.ptb"), "-o", ws.path("model.bin")});
    CAPTURE(trained.err);
    CHECK(trained.code == 0);
    CliRun parsed = run({"parse", "-m", ws.path("model.bin"), ws.path("input.txt"), "-o",
                         ws.path("out.ptb")});
    CHECK(parsed.code == 0);
    CHECK(ws.read("out.ptb") == std::string(kSentence) + "\n");
}

TEST_CASE("malformed parse input names the line") {
    Workspace ws;
    ws.write("train.ptb", std::string(kSentence) + "\n");
    CHECK(run({"train", "--epochs", "2", ws.path("train.ptb"), "-o", ws.path("m.bin")}).code ==
          0);
    ws.write("bad.txt", "The_DT broken\n");
    CliRun r = run({"parse", "-m", ws.path("m.bin"), ws.path("bad.txt")});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 1") != std::string::npos);

    // empty input parses to empty output
    ws.write("empty.txt", "");
    CliRun empty = run({"parse", "-m", ws.path("m.bin"), ws.path("empty.txt"), "-o",
                        ws.path("empty.out")});
    CHECK(empty.code == 0);
    CHECK(ws.read("empty.out").empty());
}

TEST_CASE("stats reports both systems") {
    Workspace ws;
    ws.write("corpus.ptb", std::string(kSentence) + "\n");
    CliRun r = run({"stats", ws.path("corpus.ptb"), "--json", ws.path("stats.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("nonbinary: 12.00") != std::string::npos);
    CHECK(r.out.find("binary:    14.00") != std::string::npos);
    CHECK(ws.read("stats.json").find("\"mean\": 12.0") != std::string::npos);
}

TEST_CASE("a small audit passes and writes a machine-readable report") {
    Workspace ws;
    CliRun r = run({"audit", "--samples", "60", "--max-n", "4", "--seed", "5", "--json",
                    ws.path("audit.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 mismatches") != std::string::npos);
    CHECK(ws.read("audit.json").find("\"mismatches\": 0") != std::string::npos);
}

TEST_CASE("options can come from a config file") {
    Workspace ws;
    ws.write("train.ptb", std::string(kSentence) + "\n");
    ws.write("run.cfg", "[train]\nepochs=3\nseed=11\n");
    CliRun r = run({"--config", ws.path("run.cfg"), "train", ws.path("train.ptb"), "-o",
                    ws.path("m.bin")});
    CAPTURE(r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("epoch 3:") != std::string::npos);
    CHECK(r.out.find("epoch 4:") == std::string::npos);
}

TEST_CASE("threaded parsing matches single-threaded output") {
    Workspace ws;
    std::string corpus;
    corpus += "(S (NP (DT a) (NN b)) (VP (VB c) (NP (DT d) (NN e))))\n";
    corpus += "(S (NP (NN f)) (VP (VB g) (PP (IN h) (NP (NN i)))))\n";
    ws.write("train.ptb", corpus);
    CHECK(run({"train", "--epochs", "6", ws.path("train.ptb"), "-o", ws.path("m.bin")}).code ==
          0);
    ws.write("input.txt", "a_DT b_NN c_VB d_DT e_NN\nf_NN g_VB h_IN i_NN\n");
    CHECK(run({"parse", "-m", ws.path("m.bin"), ws.path("input.txt"), "-o",
               ws.path("one.ptb")}).code == 0);
    CHECK(run({"parse", "-m", ws.path("m.bin"), ws.path("input.txt"), "-o", ws.path("four.ptb"),
               "--threads", "4"}).code == 0);
    CHECK(ws.read("one.ptb") == ws.read("four.ptb"));
}
