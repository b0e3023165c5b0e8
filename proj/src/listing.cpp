#include "curate/listing.hpp"

namespace curate {

using nlohmann::json;

Listing parse_listing(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ParseError("malformed JSON listing record");
    }
    Listing listing;
    listing.id = j.value("id", std::string());
    listing.title = j.value("title", std::string());
    listing.description = j.value("description", std::string());
    listing.category = j.value("category", std::string());
    if (j.contains("aspects")) {
        if (!j["aspects"].is_array()) throw ParseError("listing 'aspects' must be an array");
        for (const auto& item : j["aspects"]) {
            if (!item.is_object() || !item.contains("name") || !item.contains("value")) {
                throw ParseError("listing aspect entries need 'name' and 'value'");
            }
            Aspect aspect{item["name"].get<std::string>(), item["value"].get<std::string>()};
            if (aspect.name.empty()) throw ParseError("listing aspect with empty name");
            listing.aspects.push_back(std::move(aspect));
        }
    }
    if (j.contains("condition") && j["condition"].is_string())
        listing.condition = j["condition"].get<std::string>();
    if (j.contains("price") && j["price"].is_string())
        listing.price = j["price"].get<std::string>();
    if (j.contains("listing_type") && j["listing_type"].is_string())
        listing.listing_type = j["listing_type"].get<std::string>();
    if (listing.title.empty()) throw ParseError("listing record missing title");
    return listing;
}

std::string serialize_listing_record(const Listing& listing) {
    json j;
    j["id"] = listing.id;
    j["title"] = listing.title;
    if (!listing.description.empty()) j["description"] = listing.description;
    if (!listing.category.empty()) j["category"] = listing.category;
    json aspects = json::array();
    for (const auto& aspect : listing.aspects) {
        aspects.push_back({{"name", aspect.name}, {"value", aspect.value}});
    }
    j["aspects"] = std::move(aspects);
    if (listing.condition) j["condition"] = *listing.condition;
    if (listing.price) j["price"] = *listing.price;
    if (listing.listing_type) j["listing_type"] = *listing.listing_type;
    return j.dump();
}

}  // namespace curate
