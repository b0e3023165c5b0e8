// Builders for the two e-commerce evaluation tasks: item selection (pick the
// uncorrupted listing among four candidates) and aspect prediction (predict
// an aspect value from title, category, and the aspect key).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curate/listing.hpp"
#include "curate/serialize.hpp"

namespace curate {

struct ItemSelectionInstance {
    std::string listing_id;
    std::vector<std::string> candidates;  // exactly 4 serialized texts
    int gold_index = 0;                   // position of the uncorrupted one

    nlohmann::json to_json() const;
};

struct AspectPredictionInstance {
    std::string listing_id;
    std::string prompt;
    std::string aspect_name;
    std::string reference;

    nlohmann::json to_json() const;
};

// Why an instance could not be built; recorded, not thrown.
struct SkipReason {
    std::string listing_id;
    std::string reason;
};

template <typename T>
struct BuildOutcome {
    std::optional<T> instance;
    std::optional<SkipReason> skipped;
};

// Builds one item-selection instance: three corrupted copies of `original`,
// each with up to `n_corrupt_aspects` aspect values replaced by a donor's
// value for the same aspect name. Candidates are serialized with the
// natural-language-tag style over title and aspects only, and shuffled
// deterministically from `rng_seed`. Requires at least three donors that
// share an aspect name with a differing value.
BuildOutcome<ItemSelectionInstance> build_item_selection(const Listing& original,
                                                         const std::vector<Listing>& donors,
                                                         int n_corrupt_aspects,
                                                         std::uint64_t rng_seed);

// Builds one aspect-prediction instance for listing.aspects[aspect_index].
// Skipped when the value is empty or already appears in the prompt.
BuildOutcome<AspectPredictionInstance> build_aspect_prediction(const Listing& listing,
                                                               std::size_t aspect_index);

}  // namespace curate
