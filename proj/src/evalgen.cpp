#include "curate/evalgen.hpp"

#include <algorithm>

#include "curate/text.hpp"
#include "curate/util.hpp"

namespace curate {

namespace {

// Candidates carry only title and aspects.
Listing strip_for_selection(const Listing& listing) {
    Listing out;
    out.id = listing.id;
    out.title = listing.title;
    out.aspects = listing.aspects;
    return out;
}

std::string candidate_text(const Listing& listing) {
    SerializationStrategy strategy;
    strategy.variant = TagStyle::kNaturalLanguageTags;
    strategy.field_order = FieldOrder::kFixed;
    return serialize_listing(listing, strategy);
}

// Indices of `original` aspects the donor can replace: same name, different
// value.
std::vector<std::size_t> replaceable_aspects(const Listing& original, const Listing& donor) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < original.aspects.size(); ++i) {
        for (const auto& donor_aspect : donor.aspects) {
            if (donor_aspect.name == original.aspects[i].name &&
                donor_aspect.value != original.aspects[i].value) {
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

const std::string* donor_value(const Listing& donor, const std::string& name) {
    for (const auto& aspect : donor.aspects) {
        if (aspect.name == name) return &aspect.value;
    }
    return nullptr;
}

}  // namespace

nlohmann::json ItemSelectionInstance::to_json() const {
    nlohmann::json j;
    j["task"] = "item_selection";
    j["listing_id"] = listing_id;
    j["candidates"] = candidates;
    j["gold_index"] = gold_index;
    return j;
}

nlohmann::json AspectPredictionInstance::to_json() const {
    nlohmann::json j;
    j["task"] = "aspect_prediction";
    j["listing_id"] = listing_id;
    j["prompt"] = prompt;
    j["aspect_name"] = aspect_name;
    j["reference"] = reference;
    return j;
}

BuildOutcome<ItemSelectionInstance> build_item_selection(const Listing& original,
                                                         const std::vector<Listing>& donors,
                                                         int n_corrupt_aspects,
                                                         std::uint64_t rng_seed) {
    BuildOutcome<ItemSelectionInstance> outcome;
    if (original.aspects.empty()) {
        outcome.skipped = {original.id, "listing has no aspects"};
        return outcome;
    }
    if (n_corrupt_aspects < 1) {
        outcome.skipped = {original.id, "n_corrupt_aspects must be >= 1"};
        return outcome;
    }

    const Listing base = strip_for_selection(original);
    Rng rng(rng_seed ^ hash64(original.id));

    std::vector<const Listing*> usable;
    for (const auto& donor : donors) {
        if (donor.id == original.id) continue;
        if (!replaceable_aspects(base, donor).empty()) usable.push_back(&donor);
        if (usable.size() == 3) break;
    }
    if (usable.size() < 3) {
        outcome.skipped = {original.id, "fewer than 3 donors share a differing aspect value"};
        return outcome;
    }

    std::vector<std::string> texts;
    texts.push_back(candidate_text(base));
    for (const Listing* donor : usable) {
        Listing corrupted = base;
        std::vector<std::size_t> replaceable = replaceable_aspects(base, *donor);
        rng.shuffle(replaceable);
        std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(n_corrupt_aspects),
                                              replaceable.size());
        for (std::size_t i = 0; i < n; ++i) {
            const Aspect& target = base.aspects[replaceable[i]];
            corrupted.aspects[replaceable[i]].value = *donor_value(*donor, target.name);
        }
        texts.push_back(candidate_text(corrupted));
    }

    std::vector<std::size_t> order = {0, 1, 2, 3};
    rng.shuffle(order);

    ItemSelectionInstance instance;
    instance.listing_id = original.id;
    instance.candidates.resize(4);
    for (std::size_t slot = 0; slot < 4; ++slot) {
        instance.candidates[slot] = texts[order[slot]];
        if (order[slot] == 0) instance.gold_index = static_cast<int>(slot);
    }
    outcome.instance = std::move(instance);
    return outcome;
}

BuildOutcome<AspectPredictionInstance> build_aspect_prediction(const Listing& listing,
                                                               std::size_t aspect_index) {
    BuildOutcome<AspectPredictionInstance> outcome;
    if (aspect_index >= listing.aspects.size()) {
        outcome.skipped = {listing.id, "aspect index out of range"};
        return outcome;
    }
    const Aspect& aspect = listing.aspects[aspect_index];
    if (aspect.value.empty()) {
        outcome.skipped = {listing.id, "aspect '" + aspect.name + "' has an empty value"};
        return outcome;
    }

    std::string prompt = "Item Title: " + listing.title + "\n";
    if (!listing.category.empty()) prompt += "Category: " + listing.category + "\n";
    prompt += aspect.name + ":";

    // The reference must not be recoverable from the prompt itself; compare
    // on the normalized view so case and spacing differences still count as
    // leaks.
    std::string norm_prompt = normalize(prompt);
    std::string norm_value = normalize(aspect.value);
    if (norm_value.empty() || norm_prompt.find(norm_value) != std::string::npos) {
        outcome.skipped = {listing.id, "aspect value appears in the prompt"};
        return outcome;
    }

    AspectPredictionInstance instance;
    instance.listing_id = listing.id;
    instance.prompt = std::move(prompt);
    instance.aspect_name = aspect.name;
    instance.reference = aspect.value;
    outcome.instance = std::move(instance);
    return outcome;
}

}  // namespace curate
