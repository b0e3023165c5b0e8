// Shared fixture helpers: in-memory signal assets, random document and
// listing generators, temp directories.

#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "curate/assets.hpp"
#include "curate/document.hpp"
#include "curate/listing.hpp"
#include "curate/util.hpp"

namespace fixtures {

inline curate::SignalAssets test_assets() {
    curate::SignalAssets assets;
    assets.add_stopwords("en", {"the", "a", "of", "and", "to", "in", "is", "it"});
    assets.add_ldnoobw("en", {"badword", "bad phrase"});
    assets.ut1_blacklist_domains = {"evil.example", "blocked.example"};
    assets.default_language = "en";
    return assets;
}

class TempDir {
   public:
    explicit TempDir(const std::string& tag) {
        base_ = std::filesystem::temp_directory_path() /
                ("curate_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(base_);
        std::filesystem::create_directories(base_);
    }
    ~TempDir() { std::filesystem::remove_all(base_); }

    std::string path(const std::string& name) const { return (base_ / name).string(); }
    const std::filesystem::path& base() const { return base_; }

   private:
    std::filesystem::path base_;
};

// A plausibly messy random document: multiple lines, occasional bullets,
// ellipses, symbols, numbers, accents, and stopwords.
inline std::string random_document_text(curate::Rng& rng, std::size_t max_words = 60) {
    static const std::vector<std::string> vocab = {
        "the",   "cat",    "sat",   "on",    "mat",  "dog",   "run",  "fast",
        "123",   "42",     "#",     "...",   "over", "über", "naive", "word",
        "stop",  "lore",   "hello", "world", "of",   "and",   "to",   "in",
        "badword", "x1",   "y2",    "zz",    "item", "value",
    };
    std::size_t words = rng.bounded(max_words + 1);
    std::string text;
    for (std::size_t i = 0; i < words; ++i) {
        if (i && rng.bounded(8) == 0) {
            text.push_back('\n');
            if (rng.bounded(4) == 0) text += "• ";
        } else if (i) {
            text.push_back(' ');
        }
        text += vocab[rng.bounded(vocab.size())];
        if (rng.bounded(16) == 0) text += "…";
    }
    if (words && rng.bounded(4) == 0) text += "...";
    return text;
}

inline curate::Document make_doc(std::string id, std::string text) {
    curate::Document doc;
    doc.id = std::move(id);
    doc.text = std::move(text);
    doc.language = "en";
    doc.ccnet_language_score = 0.95;
    doc.source_dataset = "fixture";
    return doc;
}

inline curate::Listing make_listing(std::string id, std::string title,
                                    std::vector<curate::Aspect> aspects,
                                    std::string category = "Trading Cards",
                                    std::string description = {}) {
    curate::Listing listing;
    listing.id = std::move(id);
    listing.title = std::move(title);
    listing.category = std::move(category);
    listing.description = std::move(description);
    listing.aspects = std::move(aspects);
    return listing;
}

}  // namespace fixtures
