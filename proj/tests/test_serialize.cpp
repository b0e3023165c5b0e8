#include <doctest.h>

#include <algorithm>
#include <set>

#include "curate/evalgen.hpp"
#include "curate/serialize.hpp"
#include "support/fixtures.hpp"

using namespace curate;

namespace {

Listing yugioh() {
    return fixtures::make_listing("L1", "Yugioh Blue-Eyes", {{"Rating", "M-Mature"}},
                                  /*category=*/"");
}

std::multiset<std::string> block_multiset(const std::string& text) {
    std::multiset<std::string> blocks;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) {
            if (start < text.size()) blocks.insert(text.substr(start));
            break;
        }
        blocks.insert(text.substr(start, end - start));
        start = end + 1;
    }
    return blocks;
}

// Random listings whose field values stay inside the grammar the round-trip
// parser understands (single-line, no reserved aspect names).
Listing random_listing(Rng& rng, int index) {
    static const std::vector<std::string> words = {
        "Vintage", "Steel",  "Card",   "Deck",   "Pokémon", "Limited",
        "Edition", "Holo",   "Sealed", "Bundle", "Widget",       "Pro",
    };
    static const std::vector<std::string> aspect_names = {
        "Rating", "Color", "Brand", "Material", "Size", "Year", "Card Type",
    };
    auto word = [&] { return words[rng.bounded(words.size())]; };

    Listing listing;
    listing.id = "listing-" + std::to_string(index);
    listing.title = word() + " " + word() + " " + std::to_string(rng.bounded(1000));
    if (rng.bounded(4)) listing.description = word() + " in box: " + word();
    if (rng.bounded(4)) listing.category = word() + " & " + word();
    std::size_t aspect_count = rng.bounded(5);
    std::vector<std::string> names(aspect_names.begin(), aspect_names.end());
    rng.shuffle(names);
    for (std::size_t a = 0; a < aspect_count; ++a) {
        listing.aspects.push_back({names[a], word() + " " + std::to_string(rng.bounded(100))});
    }
    if (rng.bounded(2)) listing.condition = "Used - " + word();
    if (rng.bounded(3)) listing.price = std::to_string(rng.bounded(999)) + ".99";
    if (rng.bounded(3)) listing.listing_type = word();
    return listing;
}

bool same_fields(const Listing& a, const Listing& b) {
    auto sorted_aspects = [](const Listing& l) {
        auto v = l.aspects;
        std::sort(v.begin(), v.end(), [](const Aspect& x, const Aspect& y) {
            return std::tie(x.name, x.value) < std::tie(y.name, y.value);
        });
        return v;
    };
    return a.title == b.title && a.description == b.description && a.category == b.category &&
           sorted_aspects(a) == sorted_aspects(b) && a.condition == b.condition &&
           a.price == b.price && a.listing_type == b.listing_type;
}

}  // namespace

TEST_CASE("serialize_listing fixed-order formats") {
    SerializationStrategy natural{TagStyle::kNaturalLanguageTags, FieldOrder::kFixed, 0};
    CHECK(serialize_listing(yugioh(), natural) ==
          "Item Title: Yugioh Blue-Eyes\nRating: M-Mature");

    SerializationStrategy special{TagStyle::kSpecialTags, FieldOrder::kFixed, 0};
    CHECK(serialize_listing(yugioh(), special) ==
          "[TITLE] Yugioh Blue-Eyes\n[ASPECT] Rating: M-Mature");

    SerializationStrategy bare{TagStyle::kNoTags, FieldOrder::kFixed, 0};
    CHECK(serialize_listing(yugioh(), bare) == "Yugioh Blue-Eyes\nRating: M-Mature");
}

TEST_CASE("serialize_listing covers every present field") {
    Listing full = fixtures::make_listing("L2", "Steel Widget", {{"Color", "Red"}},
                                          "Hardware", "A widget.");
    full.condition = "New";
    full.price = "9.99";
    full.listing_type = "Auction";
    SerializationStrategy natural{TagStyle::kNaturalLanguageTags, FieldOrder::kFixed, 0};
    CHECK(serialize_listing(full, natural) ==
          "Item Title: Steel Widget\n"
          "Item Description: A widget.\n"
          "Category: Hardware\n"
          "Color: Red\n"
          "Condition: New\n"
          "Price: 9.99\n"
          "Listing Type: Auction");
}

TEST_CASE("randomized serialization is deterministic per listing") {
    SerializationStrategy strategy{TagStyle::kNaturalLanguageTags, FieldOrder::kRandomized, 77};
    Listing full = fixtures::make_listing(
        "L3", "Vintage Deck", {{"Rating", "E"}, {"Year", "1999"}, {"Color", "Teal"}},
        "Cards", "Sealed.");
    CHECK(serialize_listing(full, strategy) == serialize_listing(full, strategy));
}

TEST_CASE("randomized serialization permutes blocks without changing the multiset") {
    Listing full = fixtures::make_listing(
        "L4", "Vintage Deck", {{"Rating", "E"}, {"Year", "1999"}, {"Color", "Teal"}},
        "Cards", "Sealed.");
    SerializationStrategy a{TagStyle::kNaturalLanguageTags, FieldOrder::kRandomized, 1};
    SerializationStrategy b{TagStyle::kNaturalLanguageTags, FieldOrder::kRandomized, 2};
    CHECK(block_multiset(serialize_listing(full, a)) ==
          block_multiset(serialize_listing(full, b)));
}

TEST_CASE("round trip recovers all fields under both tagged styles") {
    Rng rng(4242);
    for (int i = 0; i < 200; ++i) {
        Listing original = random_listing(rng, i);
        for (TagStyle style : {TagStyle::kSpecialTags, TagStyle::kNaturalLanguageTags}) {
            SerializationStrategy strategy{style, FieldOrder::kRandomized, 99};
            std::string text = serialize_listing(original, strategy);
            Listing parsed = parse_serialized_listing(text, style);
            CHECK(same_fields(original, parsed));
        }
    }
}

TEST_CASE("no_tags is not invertible") {
    CHECK_THROWS_AS(parse_serialized_listing("anything", TagStyle::kNoTags), SerializeError);
}

TEST_CASE("serialize_translation_pair") {
    CHECK(serialize_translation_pair({"Hello.", "Hallo.", "en", "de"}) ==
          "Hello. [TO_DE] Hallo.");
    CHECK(serialize_translation_pair({"Hola.", "Hi.", "es", "en"}) == "Hola. [TO_EN] Hi.");
    CHECK_THROWS_AS(serialize_translation_pair({"Hi.", "Hi.", "en", "en"}), SerializeError);
    CHECK_THROWS_AS(serialize_translation_pair({"Ahoj.", "Hi.", "cs", "en"}), SerializeError);
}

TEST_CASE("build_item_selection") {
    Listing original = fixtures::make_listing(
        "orig", "Yugioh Blue-Eyes", {{"Rating", "M-Mature"}, {"Color", "Blue"}});
    std::vector<Listing> donors = {
        fixtures::make_listing("d1", "Other Card", {{"Rating", "E-Everyone"}}),
        fixtures::make_listing("d2", "Another", {{"Rating", "T-Teen"}, {"Color", "Red"}}),
        fixtures::make_listing("d3", "Third", {{"Color", "Green"}}),
    };

    SUBCASE("produces exactly one uncorrupted candidate") {
        auto outcome = build_item_selection(original, donors, 1, 123);
        REQUIRE(outcome.instance);
        const auto& inst = *outcome.instance;
        REQUIRE(inst.candidates.size() == 4);
        SerializationStrategy natural{TagStyle::kNaturalLanguageTags, FieldOrder::kFixed, 0};
        Listing stripped;
        stripped.id = original.id;
        stripped.title = original.title;
        stripped.aspects = original.aspects;
        std::string gold = serialize_listing(stripped, natural);
        int matches = 0;
        for (int c = 0; c < 4; ++c) {
            if (inst.candidates[c] == gold) {
                ++matches;
                CHECK(c == inst.gold_index);
            }
        }
        CHECK(matches == 1);
    }

    SUBCASE("corrupted candidates take the donor value for a shared aspect") {
        std::vector<Listing> single_donor = {
            fixtures::make_listing("d1", "Other", {{"Rating", "E-Everyone"}}),
            fixtures::make_listing("d2", "Other2", {{"Rating", "E-Everyone"}}),
            fixtures::make_listing("d3", "Other3", {{"Rating", "E-Everyone"}}),
        };
        auto outcome = build_item_selection(original, single_donor, 1, 5);
        REQUIRE(outcome.instance);
        int corrupted_with_donor_value = 0;
        for (const auto& text : outcome.instance->candidates) {
            if (text.find("Rating: E-Everyone") != std::string::npos) {
                ++corrupted_with_donor_value;
            }
        }
        CHECK(corrupted_with_donor_value == 3);
    }

    SUBCASE("donors without a differing shared aspect are unusable") {
        std::vector<Listing> useless = {
            fixtures::make_listing("d1", "Same", {{"Rating", "M-Mature"}}),  // same value
            fixtures::make_listing("d2", "NoShared", {{"Weight", "1kg"}}),
            fixtures::make_listing("d3", "Empty", {}),
        };
        auto outcome = build_item_selection(original, useless, 1, 5);
        CHECK(!outcome.instance);
        REQUIRE(outcome.skipped);
        CHECK(outcome.skipped->reason.find("donors") != std::string::npos);
    }

    SUBCASE("deterministic for a fixed seed") {
        auto one = build_item_selection(original, donors, 1, 777);
        auto two = build_item_selection(original, donors, 1, 777);
        REQUIRE(one.instance);
        REQUIRE(two.instance);
        CHECK(one.instance->candidates == two.instance->candidates);
        CHECK(one.instance->gold_index == two.instance->gold_index);
    }

    SUBCASE("listing without aspects is skipped") {
        Listing bare = fixtures::make_listing("bare", "No Aspects", {});
        CHECK(!build_item_selection(bare, donors, 1, 1).instance);
    }
}

TEST_CASE("build_aspect_prediction") {
    Listing listing = fixtures::make_listing(
        "ap1", "Yugioh Blue-Eyes Karte Deutsch", {{"Rating", "M-Mature"}}, "Trading Cards");

    SUBCASE("prompt ends with the aspect key and holds the reference") {
        auto outcome = build_aspect_prediction(listing, 0);
        REQUIRE(outcome.instance);
        CHECK(outcome.instance->prompt ==
              "Item Title: Yugioh Blue-Eyes Karte Deutsch\nCategory: Trading Cards\nRating:");
        CHECK(outcome.instance->reference == "M-Mature");
        CHECK(outcome.instance->prompt.find("M-Mature") == std::string::npos);
    }

    SUBCASE("value leaking into the title is skipped") {
        Listing leaky = fixtures::make_listing("ap2", "Blue Widget Deluxe",
                                               {{"Color", "Blue"}}, "Widgets");
        auto outcome = build_aspect_prediction(leaky, 0);
        CHECK(!outcome.instance);
        REQUIRE(outcome.skipped);
    }

    SUBCASE("case-insensitive leak detection") {
        Listing leaky = fixtures::make_listing("ap3", "BLUE Widget", {{"Color", "blue"}});
        CHECK(!build_aspect_prediction(leaky, 0).instance);
    }

    SUBCASE("empty value is skipped with a reason") {
        Listing empty_value = fixtures::make_listing("ap4", "Widget", {{"Color", ""}});
        auto outcome = build_aspect_prediction(empty_value, 0);
        CHECK(!outcome.instance);
        REQUIRE(outcome.skipped);
        CHECK(outcome.skipped->reason.find("empty") != std::string::npos);
    }

    SUBCASE("out of range index is skipped") {
        CHECK(!build_aspect_prediction(listing, 5).instance);
    }

    SUBCASE("deterministic") {
        auto one = build_aspect_prediction(listing, 0);
        auto two = build_aspect_prediction(listing, 0);
        REQUIRE(one.instance);
        CHECK(one.instance->prompt == two.instance->prompt);
        CHECK(one.instance->reference == two.instance->reference);
    }
}

TEST_CASE("listing record json round trip") {
    Rng rng(86);
    for (int i = 0; i < 50; ++i) {
        Listing original = random_listing(rng, i);
        Listing reparsed = parse_listing(serialize_listing_record(original));
        CHECK(original == reparsed);
    }
}
