#ifndef NBPARSE_MODEL_HPP
#define NBPARSE_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nbparse/features.hpp"
#include "nbparse/system.hpp"

namespace nbparse {

class ModelError : public std::runtime_error {
  public:
    explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// Averaged multiclass perceptron over hashed features. Weights are kept per
// (feature bucket, transition); transitions are registered on first sight.
// Training reads the raw weights; finalize_average() switches inference to
// the running average. With zero updates both coincide (all scores zero).
class LinearModel {
  public:
    LinearModel() = default;
    LinearModel(SystemKind system, Inventory inventory, std::string fallback_root,
                int bucket_bits = 22);

    SystemKind system() const { return inventory_.system; }
    const Inventory& inventory() const { return inventory_; }
    const std::string& fallback_root() const { return fallback_root_; }
    int bucket_bits() const { return bucket_bits_; }
    int unary_cap() const { return inventory_.unary_cap; }

    const std::vector<Transition>& transitions() const { return registry_; }
    int transition_id(const Transition& t);  // registers when new

    double score(const std::vector<FeatureId>& features, const Transition& t) const;
    // Scores for every registered transition; legality filtering is the
    // caller's business.
    std::map<Transition, double> score_all(const Configuration& c) const;
    std::map<Transition, double> score_candidates(const std::vector<FeatureId>& features,
                                                  const std::vector<Transition>& candidates) const;

    // Perceptron step: promote `correct`, demote `predicted` on c's features.
    void update(const Configuration& c, const Transition& correct, const Transition& predicted);

    // Advances the averaging clock by one decision. Trainers call this once
    // per scored state so that weights surviving many clean decisions
    // dominate the average.
    void tick() { ++steps_; }

    void finalize_average();
    bool finalized() const { return finalized_; }
    std::uint64_t update_count() const { return updates_; }

    // Direct weight poke on the inference table (tests).
    void add_weight(const Transition& t, FeatureId feature, double delta);

    std::string serialize() const;
    static LinearModel deserialize(const std::string& text);
    void save(const std::string& path) const;
    static LinearModel load(const std::string& path);

  private:
    struct Cell {
        double weight = 0;
        double acc = 0;
        std::uint64_t last = 0;
    };

    std::uint64_t key(FeatureId f, int tid) const;
    void bump(std::uint64_t k, double delta);

    Inventory inventory_;
    std::string fallback_root_ = "S";
    int bucket_bits_ = 22;

    std::vector<Transition> registry_;
    std::map<Transition, int> ids_;

    std::unordered_map<std::uint64_t, Cell> cells_;
    std::unordered_map<std::uint64_t, double> inference_;
    std::uint64_t steps_ = 0;    // decisions seen (averaging clock)
    std::uint64_t updates_ = 0;  // perceptron updates applied
    bool finalized_ = false;
};

}  // namespace nbparse

#endif
