#include "nbparse/model.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

namespace nbparse {

namespace {
constexpr int kTransitionBits = 21;
constexpr const char* kMagic = "nbparse-model";
constexpr int kVersion = 1;
}  // namespace

LinearModel::LinearModel(SystemKind system, Inventory inventory, std::string fallback_root,
                         int bucket_bits)
    : inventory_(std::move(inventory)),
      fallback_root_(std::move(fallback_root)),
      bucket_bits_(bucket_bits) {
    inventory_.system = system;
    if (bucket_bits_ < 8 || bucket_bits_ > 40) throw ModelError("bucket bits out of range");
    for (const Transition& t : inventory_.reduce_transitions()) transition_id(t);
    transition_id(Transition::shift());
    transition_id(Transition::finish());
}

int LinearModel::transition_id(const Transition& t) {
    auto it = ids_.find(t);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(registry_.size());
    if (id >= (1 << kTransitionBits)) throw ModelError("transition registry overflow");
    registry_.push_back(t);
    ids_.emplace(t, id);
    return id;
}

std::uint64_t LinearModel::key(FeatureId f, int tid) const {
    return (f << kTransitionBits) | static_cast<std::uint64_t>(tid);
}

double LinearModel::score(const std::vector<FeatureId>& features, const Transition& t) const {
    auto it = ids_.find(t);
    if (it == ids_.end()) return 0.0;
    const int tid = it->second;
    double total = 0;
    if (finalized_) {
        for (FeatureId f : features) {
            auto cell = inference_.find(key(f, tid));
            if (cell != inference_.end()) total += cell->second;
        }
    } else {
        for (FeatureId f : features) {
            auto cell = cells_.find(key(f, tid));
            if (cell != cells_.end()) total += cell->second.weight;
        }
    }
    return total;
}

std::map<Transition, double> LinearModel::score_all(const Configuration& c) const {
    std::vector<FeatureId> features = featurize(c, bucket_bits_);
    std::map<Transition, double> out;
    for (const Transition& t : registry_) out[t] = score(features, t);
    return out;
}

std::map<Transition, double> LinearModel::score_candidates(
    const std::vector<FeatureId>& features, const std::vector<Transition>& candidates) const {
    std::map<Transition, double> out;
    for (const Transition& t : candidates) out[t] = score(features, t);
    return out;
}

void LinearModel::bump(std::uint64_t k, double delta) {
    Cell& cell = cells_[k];
    cell.acc += cell.weight * static_cast<double>(steps_ - cell.last);
    cell.weight += delta;
    cell.last = steps_;
}

void LinearModel::update(const Configuration& c, const Transition& correct,
                         const Transition& predicted) {
    if (correct == predicted) return;
    if (finalized_) throw ModelError("update on a finalized model");
    const int good = transition_id(correct);
    const int bad = transition_id(predicted);
    ++updates_;
    for (FeatureId f : featurize(c, bucket_bits_)) {
        bump(key(f, good), 1.0);
        bump(key(f, bad), -1.0);
    }
}

void LinearModel::finalize_average() {
    inference_.clear();
    if (steps_ == 0) {
        // no clock was run: the average of a single point is the point itself
        for (const auto& [k, cell] : cells_) {
            if (cell.weight != 0.0) inference_[k] = cell.weight;
        }
        finalized_ = true;
        return;
    }
    const double total = static_cast<double>(steps_);
    for (auto& [k, cell] : cells_) {
        const double acc = cell.acc + cell.weight * static_cast<double>(steps_ - cell.last);
        const double avg = acc / total;
        if (avg != 0.0) inference_[k] = avg;
    }
    finalized_ = true;
}

void LinearModel::add_weight(const Transition& t, FeatureId feature, double delta) {
    const int tid = transition_id(t);
    if (finalized_) {
        inference_[key(feature, tid)] += delta;
    } else {
        cells_[key(feature, tid)].weight += delta;
    }
}

std::string LinearModel::serialize() const {
    std::ostringstream out;
    out << kMagic << " " << kVersion << "\n";
    out << "system " << to_string(inventory_.system) << "\n";
    out << "templates " << kTemplateSetId << "\n";
    out << "bucket-bits " << bucket_bits_ << "\n";
    out << "unary-cap " << inventory_.unary_cap << "\n";
    out << "fallback-root " << fallback_root_ << "\n";
    out << "finalized " << (finalized_ ? 1 : 0) << "\n";

    out << "transitions " << registry_.size() << "\n";
    for (const Transition& t : registry_) out << to_string(t) << "\n";

    std::vector<Transition> inv = inventory_.reduce_transitions();
    out << "inventory " << inv.size() << "\n";
    for (const Transition& t : inv) out << to_string(t) << "\n";

    std::vector<std::pair<std::uint64_t, double>> weights;
    if (finalized_) {
        weights.assign(inference_.begin(), inference_.end());
    } else {
        for (const auto& [k, cell] : cells_) {
            if (cell.weight != 0.0) weights.emplace_back(k, cell.weight);
        }
    }
    std::sort(weights.begin(), weights.end());
    out << "weights " << weights.size() << "\n";
    out << std::hex;
    for (const auto& [k, w] : weights) {
        out << k << " " << std::bit_cast<std::uint64_t>(w) << "\n";
    }
    out << std::dec << "end\n";
    return out.str();
}

LinearModel LinearModel::deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kMagic) {
        throw ModelError("not a model file (bad magic)");
    }
    if (version != kVersion) {
        throw ModelError("unsupported model version " + std::to_string(version));
    }
    auto expect = [&in](const std::string& field) {
        std::string got;
        if (!(in >> got) || got != field) throw ModelError("model file: expected '" + field + "'");
    };

    LinearModel model;
    std::string system_name;
    expect("system");
    in >> system_name;
    model.inventory_.system = system_from_string(system_name);
    std::string templates;
    expect("templates");
    in >> templates;
    if (templates != kTemplateSetId) {
        throw ModelError("model built with template set '" + templates + "', this build has '" +
                         std::string(kTemplateSetId) + "'");
    }
    expect("bucket-bits");
    in >> model.bucket_bits_;
    expect("unary-cap");
    in >> model.inventory_.unary_cap;
    expect("fallback-root");
    in >> model.fallback_root_;
    int finalized = 0;
    expect("finalized");
    in >> finalized;

    std::size_t count = 0;
    expect("transitions");
    in >> count;
    for (std::size_t i = 0; i < count; ++i) {
        std::string s;
        in >> s;
        model.transition_id(transition_from_string(s));
    }
    expect("inventory");
    in >> count;
    for (std::size_t i = 0; i < count; ++i) {
        std::string s;
        in >> s;
        model.inventory_.add(transition_from_string(s));
    }
    expect("weights");
    in >> count;
    in >> std::hex;
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t k = 0, bits = 0;
        if (!(in >> k >> bits)) throw ModelError("model file: truncated weights");
        const double w = std::bit_cast<double>(bits);
        if (finalized) {
            model.inference_[k] = w;
        } else {
            model.cells_[k].weight = w;
        }
    }
    in >> std::dec;
    std::string tail;
    if (!(in >> tail) || tail != "end") throw ModelError("model file: missing end marker");
    model.finalized_ = finalized != 0;
    return model;
}

void LinearModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open model file for writing: " + path);
    out << serialize();
}

LinearModel LinearModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

}  // namespace nbparse
