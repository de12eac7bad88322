#ifndef NBPARSE_FEATURES_HPP
#define NBPARSE_FEATURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nbparse/config.hpp"

namespace nbparse {

using FeatureId = std::uint64_t;

// Identifies the template set baked into featurize(); stored in model files
// so stale models are rejected.
extern const char* const kTemplateSetId;

// Hashed sparse indicator features of a configuration: labels, boundary
// words/tags and widths of the top three stack items, the next three buffer
// tokens, the last two actions, the top item's arity, and conjunctions of
// those. Deterministic; templates whose slots are absent are not emitted.
std::vector<FeatureId> featurize(const Configuration& c, int bucket_bits);

// Readable template instantiations, for tests and debugging.
std::vector<std::string> featurize_named(const Configuration& c);

FeatureId hash_feature(const std::string& name, int bucket_bits);

}  // namespace nbparse

#endif
