// Flattening structured records into training text. Three tagging strategies
// are supported; block order can be randomized per listing (deterministically,
// derived from the listing id) so the multiset of blocks is seed-invariant.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curate/listing.hpp"

namespace curate {

enum class TagStyle {
    kSpecialTags,          // "[TITLE] ..."
    kNaturalLanguageTags,  // "Item Title: ..."
    kNoTags,               // bare values
};

enum class FieldOrder { kFixed, kRandomized };

struct SerializationStrategy {
    TagStyle variant = TagStyle::kNaturalLanguageTags;
    FieldOrder field_order = FieldOrder::kFixed;
    std::uint64_t rng_seed = 0;

    static TagStyle tag_style_from_name(const std::string& name);
    static std::string tag_style_name(TagStyle style);
};

// One block per present field, each on its own line. Aspect pairs are single
// blocks; randomization permutes whole blocks only.
std::string serialize_listing(const Listing& listing, const SerializationStrategy& strategy);

// Inverse of serialize_listing for the two tagged styles (kNoTags is not
// invertible). Recovers every field except the original block order.
Listing parse_serialized_listing(const std::string& text, TagStyle style);

struct TranslationPair {
    std::string source_text;
    std::string target_text;
    std::string source_lang;
    std::string target_lang;
};

class SerializeError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

bool is_supported_language(const std::string& code);

// "<source> [TO_XX] <target>" with the uppercased target code. Throws
// SerializeError for unsupported codes or equal source/target languages.
std::string serialize_translation_pair(const TranslationPair& pair);

// One JSONL record <-> TranslationPair.
TranslationPair parse_translation_pair(const std::string& line);

}  // namespace curate
