#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nbparse/model.hpp"
#include "nbparse/ptb.hpp"

using namespace nbparse;

namespace {

const char* kSentence =
    "(S (NP (DT The) (NN public)) (VP (VBZ is) (ADVP (RB still)) (ADJP (JJ cautious))) (. .))";

Tree example_tree() { return read_ptb(kSentence)[0]; }

Configuration after(const std::vector<std::string>& transitions) {
    std::vector<Transition> seq;
    for (const std::string& s : transitions) seq.push_back(transition_from_string(s));
    return replay(tree_tokens(example_tree()), seq);
}

LinearModel fresh_model() {
    Inventory inv;
    inv.system = SystemKind::nonbinary;
    for (const Transition& t : static_oracle_nonbinary(example_tree())) {
        if (t.is_reduce()) inv.add(t);
    }
    return LinearModel(SystemKind::nonbinary, inv, "S");
}

bool any_starts_with(const std::vector<std::string>& names, const std::string& prefix) {
    for (const std::string& n : names) {
        if (n.rfind(prefix, 0) == 0) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("featurize is deterministic") {
    Configuration c = after({"SHIFT", "SHIFT", "REDUCE-NP#2"});
    CHECK(featurize(c, 22) == featurize(c, 22));
    Configuration again = after({"SHIFT", "SHIFT", "REDUCE-NP#2"});
    CHECK(featurize(c, 22) == featurize(again, 22));
    CHECK(featurize_named(c) == featurize_named(again));
}

TEST_CASE("the initial configuration has buffer templates but no stack templates") {
    std::vector<std::string> names = featurize_named(after({}));
    CHECK(any_starts_with(names, "b0.form"));
    CHECK(any_starts_with(names, "b0.pos"));
    CHECK(!any_starts_with(names, "s0."));
    bool has_the = false;
    for (const std::string& n : names) {
        if (n.find("The") != std::string::npos) has_the = true;
    }
    CHECK(has_the);

    std::vector<std::string> shifted = featurize_named(after({"SHIFT"}));
    CHECK(any_starts_with(shifted, "s0."));
}

TEST_CASE("late-stage stack templates mention the built labels") {
    // stack [NP, VP], buffer ["."]
    Configuration c = after({"SHIFT", "SHIFT", "REDUCE-NP#2", "SHIFT", "SHIFT", "REDUCE-ADVP#1",
                             "SHIFT", "REDUCE-ADJP#1", "REDUCE-VP#3"});
    std::vector<std::string> names = featurize_named(c);
    bool has_np = false, has_vp = false;
    for (const std::string& n : names) {
        if (n.find("NP") != std::string::npos) has_np = true;
        if (n.find("VP") != std::string::npos) has_vp = true;
    }
    CHECK(has_np);
    CHECK(has_vp);
}

TEST_CASE("feature hashing is stable across calls and bounded by the bucket mask") {
    const FeatureId a = hash_feature("bias", 22);
    CHECK(a == hash_feature("bias", 22));
    CHECK(a < (1u << 22));
    CHECK(hash_feature("bias", 10) < (1u << 10));
}

TEST_CASE("a zero model scores everything zero and averaging is a no-op") {
    LinearModel model = fresh_model();
    Configuration c = after({});
    for (const auto& [t, s] : model.score_all(c)) CHECK(s == 0.0);
    LinearModel averaged = fresh_model();
    averaged.finalize_average();
    for (const auto& [t, s] : averaged.score_all(c)) CHECK(s == 0.0);
}

TEST_CASE("one update moves the two scores in opposite directions") {
    LinearModel model = fresh_model();
    Configuration c = after({});
    const Transition good = Transition::shift();
    const Transition bad = Transition::finish();
    std::vector<FeatureId> feats = featurize(c, model.bucket_bits());
    const double g0 = model.score(feats, good);
    const double b0 = model.score(feats, bad);
    model.update(c, good, bad);
    CHECK(model.score(feats, good) > g0);
    CHECK(model.score(feats, bad) < b0);
    // argmax over the pair flips toward the correct one
    CHECK(model.score(feats, good) > model.score(feats, bad));

    // no-op when correct == predicted
    const double g1 = model.score(feats, good);
    model.update(c, good, good);
    CHECK(model.score(feats, good) == g1);
    CHECK(model.update_count() == 1);
}

TEST_CASE("score differences are invariant under a shared constant feature") {
    LinearModel model = fresh_model();
    Configuration c = after({"SHIFT"});
    std::vector<FeatureId> feats = featurize(c, model.bucket_bits());
    model.update(c, Transition::shift(), Transition::reduce("NP", 2));
    model.update(c, Transition::shift(), Transition::finish());

    std::vector<Transition> ts = {Transition::shift(), Transition::reduce("NP", 2),
                                  Transition::finish()};
    std::vector<double> base;
    for (const Transition& t : ts) base.push_back(model.score(feats, t));

    const FeatureId shared = hash_feature("extra-shared", model.bucket_bits());
    for (const Transition& t : ts) model.add_weight(t, shared, 3.25);
    std::vector<FeatureId> extended = feats;
    extended.push_back(shared);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
            const double d0 = base[i] - base[j];
            const double d1 = model.score(extended, ts[i]) - model.score(extended, ts[j]);
            CHECK(d1 == doctest::Approx(d0));
        }
    }
}

TEST_CASE("the perceptron separates a small consistent problem") {
    LinearModel model = fresh_model();
    Tree tree = example_tree();
    std::vector<Transition> gold = static_oracle_nonbinary(tree);
    Inventory inv = model.inventory();

    bool converged = false;
    for (int round = 0; round < 200 && !converged; ++round) {
        int mistakes = 0;
        Configuration c = initial_configuration(tree_tokens(tree));
        for (const Transition& g : gold) {
            std::vector<FeatureId> feats = featurize(c, model.bucket_bits());
            std::vector<Transition> candidates = legal_transitions(c, inv);
            const Transition* best = nullptr;
            double best_score = 0;
            for (const Transition& t : candidates) {
                const double s = model.score(feats, t);
                if (!best || s > best_score || (s == best_score && t < *best)) {
                    best = &t;
                    best_score = s;
                }
            }
            if (*best != g) {
                model.update(c, g, *best);
                ++mistakes;
            }
            c = apply(c, g);
        }
        converged = mistakes == 0;
    }
    CHECK(converged);
}

TEST_CASE("serialization round trips bit-exactly") {
    LinearModel model = fresh_model();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        Configuration c = after(i % 2 ? std::vector<std::string>{"SHIFT"}
                                      : std::vector<std::string>{"SHIFT", "SHIFT"});
        model.update(c, Transition::shift(), Transition::reduce("NP", 2));
    }
    model.finalize_average();
    std::uniform_real_distribution<double> w(-2, 2);
    for (int i = 0; i < 50; ++i) {
        model.add_weight(Transition::reduce("VP", 3),
                         hash_feature("poke" + std::to_string(i), model.bucket_bits()), w(rng));
    }

    const std::string blob = model.serialize();
    LinearModel back = LinearModel::deserialize(blob);
    CHECK(back.serialize() == blob);

    for (const std::vector<std::string>& prefix :
         {std::vector<std::string>{}, {"SHIFT"}, {"SHIFT", "SHIFT"},
          {"SHIFT", "SHIFT", "REDUCE-NP#2"}}) {
        Configuration c = after(prefix);
        auto a = model.score_all(c);
        auto b = back.score_all(c);
        REQUIRE(a.size() == b.size());
        for (const auto& [t, s] : a) {
            CHECK(b.at(t) == s);  // bit-exact
        }
    }
    CHECK(back.fallback_root() == model.fallback_root());
    CHECK(back.inventory().reduce_pairs == model.inventory().reduce_pairs);
}

TEST_CASE("the loader rejects foreign files and versions") {
    CHECK_THROWS_AS(LinearModel::deserialize("not a model"), ModelError);
    LinearModel model = fresh_model();
    model.finalize_average();
    std::string blob = model.serialize();
    std::string wrong_version = blob;
    wrong_version.replace(wrong_version.find(" 1\n"), 3, " 9\n");
    CHECK_THROWS_AS(LinearModel::deserialize(wrong_version), ModelError);
    std::string wrong_templates = blob;
    wrong_templates.replace(wrong_templates.find("templates v1"), 12, "templates v9");
    CHECK_THROWS_AS(LinearModel::deserialize(wrong_templates), ModelError);
}
