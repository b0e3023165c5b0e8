// Structured e-commerce record: title, description, category, ordered
// name/value aspect pairs, optional sale metadata.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "curate/document.hpp"

namespace curate {

struct Aspect {
    std::string name;
    std::string value;

    bool operator==(const Aspect&) const = default;
};

struct Listing {
    std::string id;
    std::string title;
    std::string description;
    std::string category;
    std::vector<Aspect> aspects;
    std::optional<std::string> condition;
    std::optional<std::string> price;
    std::optional<std::string> listing_type;

    bool operator==(const Listing&) const = default;
};

// One JSONL record <-> Listing. Aspects are [{"name":..., "value":...}, ...].
// Throws ParseError on malformed records or an empty title.
Listing parse_listing(const std::string& line);
std::string serialize_listing_record(const Listing& listing);

}  // namespace curate
