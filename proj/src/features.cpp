#include "nbparse/features.hpp"

#include "nbparse/transition.hpp"

namespace nbparse {

const char* const kTemplateSetId = "v1";

namespace {

constexpr char kSep = '\x1f';

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string bucket_width(int w) {
    if (w >= 5) return "5+";
    return std::to_string(w);
}

// Collects the instantiated templates of a configuration as strings; hashing
// happens on top of this so the named and hashed views never diverge.
class Collector {
  public:
    explicit Collector(const Configuration& c) : c_(c) {}

    std::vector<std::string> run() {
        const auto& c = c_;
        const int depth = static_cast<int>(c.stack.size());
        const StackItem* s0 = depth > 0 ? &c.stack[depth - 1] : nullptr;
        const StackItem* s1 = depth > 1 ? &c.stack[depth - 2] : nullptr;
        const StackItem* s2 = depth > 2 ? &c.stack[depth - 3] : nullptr;
        const Token* b0 = token_at(0);
        const Token* b1 = token_at(1);
        const Token* b2 = token_at(2);
        const std::string* a1 = nullptr;
        const std::string* a2 = nullptr;
        std::string a1s, a2s;
        if (!c.recent.empty()) {
            a1s = to_string(c.recent.back());
            a1 = &a1s;
        }
        if (c.recent.size() > 1) {
            a2s = to_string(c.recent[c.recent.size() - 2]);
            a2 = &a2s;
        }

        emit("bias");
        if (s0) {
            emit("s0.label", label_of(*s0));
            emit("s0.first", first_form(*s0));
            emit("s0.last", last_form(*s0));
            emit("s0.lastpos", last_pos(*s0));
            emit("s0.firstpos", first_pos(*s0));
            emit("s0.width", bucket_width(s0->end - s0->begin));
            emit("s0.level", std::to_string(s0->level));
            emit("s0.arity", bucket_width(s0->arity()));
            emit("s0.label+arity", label_of(*s0), bucket_width(s0->arity()));
        }
        if (s1) {
            emit("s1.label", label_of(*s1));
            emit("s1.lastpos", last_pos(*s1));
        }
        if (s2) emit("s2.label", label_of(*s2));
        if (b0) {
            emit("b0.form", b0->form);
            emit("b0.pos", b0->pos);
            emit("b0.form+pos", b0->form, b0->pos);
        }
        if (b1) {
            emit("b1.form", b1->form);
            emit("b1.pos", b1->pos);
        }
        if (b2) {
            emit("b2.form", b2->form);
            emit("b2.pos", b2->pos);
        }
        if (a1) emit("a1", *a1);
        if (a2) emit("a2", *a2);
        if (s0 && s1) emit("s0.label+s1.label", label_of(*s0), label_of(*s1));
        if (s0 && b0) {
            emit("s0.label+b0.form", label_of(*s0), b0->form);
            emit("s0.label+b0.pos", label_of(*s0), b0->pos);
            emit("s0.lastpos+b0.pos", last_pos(*s0), b0->pos);
            emit("s0.width+b0.pos", bucket_width(s0->end - s0->begin), b0->pos);
        }
        if (s1 && b0) emit("s1.label+b0.pos", label_of(*s1), b0->pos);
        if (s0 && s1 && b0) {
            emit("s0.label+s1.label+b0.pos", label_of(*s0), label_of(*s1), b0->pos);
        }
        if (s1 && s2) emit("s1.label+s2.label", label_of(*s1), label_of(*s2));
        if (a1 && s0) emit("a1+s0.label", *a1, label_of(*s0));
        emit("stack.size", bucket_width(depth));
        emit("buffer.left", bucket_width(c.length() - c.buffer_index));
        return std::move(out_);
    }

  private:
    const Token* token_at(int offset) const {
        const int i = c_.buffer_index + offset;
        return i < c_.length() ? &c_.word(i) : nullptr;
    }
    std::string label_of(const StackItem& s) const {
        return s.token ? c_.word(s.begin).pos : s.label;
    }
    std::string first_form(const StackItem& s) const { return c_.word(s.begin).form; }
    std::string first_pos(const StackItem& s) const { return c_.word(s.begin).pos; }
    std::string last_form(const StackItem& s) const { return c_.word(s.end - 1).form; }
    std::string last_pos(const StackItem& s) const { return c_.word(s.end - 1).pos; }

    void emit(const std::string& name) { out_.push_back(name); }
    template <typename... Parts>
    void emit(const std::string& name, const Parts&... parts) {
        std::string s = name;
        ((s += kSep, s += parts), ...);
        out_.push_back(std::move(s));
    }

    const Configuration& c_;
    std::vector<std::string> out_;
};

}  // namespace

FeatureId hash_feature(const std::string& name, int bucket_bits) {
    const std::uint64_t mask = (std::uint64_t{1} << bucket_bits) - 1;
    return fnv1a(name) & mask;
}

std::vector<FeatureId> featurize(const Configuration& c, int bucket_bits) {
    Collector collector(c);
    std::vector<std::string> named = collector.run();
    std::vector<FeatureId> out;
    out.reserve(named.size());
    for (const std::string& n : named) out.push_back(hash_feature(n, bucket_bits));
    return out;
}

std::vector<std::string> featurize_named(const Configuration& c) {
    Collector collector(c);
    return collector.run();
}

}  // namespace nbparse
