#include "curate/serialize.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "curate/util.hpp"

namespace curate {

namespace {

// Tag table for the tagged styles. Kept in one place so experiments can vary
// the exact strings without touching serialization logic.
struct TagTable {
    std::string title;
    std::string description;
    std::string category;
    std::string aspect_prefix;  // prepended to "<name>: <value>" blocks
    std::string condition;
    std::string price;
    std::string listing_type;
};

const TagTable kSpecial{"[TITLE] ", "[DESCRIPTION] ", "[CATEGORY] ", "[ASPECT] ",
                        "Condition: ", "Price: ", "Listing Type: "};
const TagTable kNatural{"Item Title: ", "Item Description: ", "Category: ", "",
                        "Condition: ", "Price: ", "Listing Type: "};

const TagTable& tags_for(TagStyle style) {
    return style == TagStyle::kSpecialTags ? kSpecial : kNatural;
}

}  // namespace

TagStyle SerializationStrategy::tag_style_from_name(const std::string& name) {
    if (name == "special_tags") return TagStyle::kSpecialTags;
    if (name == "natural_language_tags") return TagStyle::kNaturalLanguageTags;
    if (name == "no_tags") return TagStyle::kNoTags;
    throw SerializeError("unknown serialization strategy '" + name + "'");
}

std::string SerializationStrategy::tag_style_name(TagStyle style) {
    switch (style) {
        case TagStyle::kSpecialTags: return "special_tags";
        case TagStyle::kNaturalLanguageTags: return "natural_language_tags";
        case TagStyle::kNoTags: return "no_tags";
    }
    return "?";
}

std::string serialize_listing(const Listing& listing, const SerializationStrategy& strategy) {
    std::vector<std::string> blocks;
    const bool bare = strategy.variant == TagStyle::kNoTags;
    const TagTable& tags = tags_for(strategy.variant);

    blocks.push_back(bare ? listing.title : tags.title + listing.title);
    if (!listing.description.empty()) {
        blocks.push_back(bare ? listing.description : tags.description + listing.description);
    }
    if (!listing.category.empty()) {
        blocks.push_back(bare ? listing.category : tags.category + listing.category);
    }
    for (const auto& aspect : listing.aspects) {
        std::string block = aspect.name + ": " + aspect.value;
        if (!bare) block = tags.aspect_prefix + block;
        blocks.push_back(std::move(block));
    }
    if (listing.condition) {
        blocks.push_back(bare ? *listing.condition : tags.condition + *listing.condition);
    }
    if (listing.price) {
        blocks.push_back(bare ? *listing.price : tags.price + *listing.price);
    }
    if (listing.listing_type) {
        blocks.push_back(bare ? *listing.listing_type : tags.listing_type + *listing.listing_type);
    }

    if (strategy.field_order == FieldOrder::kRandomized) {
        Rng rng(strategy.rng_seed ^ hash64(listing.id));
        rng.shuffle(blocks);
    }

    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) out.push_back('\n');
        out += blocks[i];
    }
    return out;
}

Listing parse_serialized_listing(const std::string& text, TagStyle style) {
    if (style == TagStyle::kNoTags) {
        throw SerializeError("the no_tags format is not invertible");
    }
    const TagTable& tags = tags_for(style);
    Listing listing;
    bool have_title = false;

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string line = text.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        start = end == std::string::npos ? text.size() + 1 : end + 1;
        if (line.empty()) continue;

        auto strip_prefix = [&](const std::string& prefix, std::string* out) {
            if (!prefix.empty() && line.starts_with(prefix)) {
                *out = line.substr(prefix.size());
                return true;
            }
            return false;
        };

        std::string value;
        if (strip_prefix(tags.title, &value)) {
            listing.title = value;
            have_title = true;
        } else if (strip_prefix(tags.description, &value)) {
            listing.description = value;
        } else if (strip_prefix(tags.category, &value)) {
            listing.category = value;
        } else if (strip_prefix(tags.condition, &value)) {
            listing.condition = value;
        } else if (strip_prefix(tags.price, &value)) {
            listing.price = value;
        } else if (strip_prefix(tags.listing_type, &value)) {
            listing.listing_type = value;
        } else {
            std::string body = line;
            if (style == TagStyle::kSpecialTags) {
                if (!line.starts_with(tags.aspect_prefix)) {
                    throw SerializeError("unrecognized block: " + line);
                }
                body = line.substr(tags.aspect_prefix.size());
            }
            auto sep = body.find(": ");
            if (sep == std::string::npos) {
                throw SerializeError("aspect block without separator: " + line);
            }
            listing.aspects.push_back({body.substr(0, sep), body.substr(sep + 2)});
        }
    }
    if (!have_title) throw SerializeError("serialized listing has no title block");
    return listing;
}

bool is_supported_language(const std::string& code) {
    static const std::array<const char*, 5> kCodes = {"en", "de", "es", "fr", "it"};
    return std::find(kCodes.begin(), kCodes.end(), code) != kCodes.end();
}

std::string serialize_translation_pair(const TranslationPair& pair) {
    if (!is_supported_language(pair.source_lang)) {
        throw SerializeError("unsupported source language '" + pair.source_lang + "'");
    }
    if (!is_supported_language(pair.target_lang)) {
        throw SerializeError("unsupported target language '" + pair.target_lang + "'");
    }
    if (pair.source_lang == pair.target_lang) {
        throw SerializeError("source and target language must differ");
    }
    std::string tag = "[TO_";
    for (char c : pair.target_lang) {
        tag.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    tag.push_back(']');
    return pair.source_text + " " + tag + " " + pair.target_text;
}

TranslationPair parse_translation_pair(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ParseError("malformed JSON translation record");
    }
    TranslationPair pair;
    pair.source_text = j.value("source_text", std::string());
    pair.target_text = j.value("target_text", std::string());
    pair.source_lang = j.value("source_lang", std::string());
    pair.target_lang = j.value("target_lang", std::string());
    if (pair.source_lang.empty() || pair.target_lang.empty()) {
        throw ParseError("translation record missing language codes");
    }
    return pair;
}

}  // namespace curate
