// Static word lists and domain blocklists backing the quality signals.
//
// Layout under the assets directory:
//   stopwords/<lang>.txt   one stop word per line
//   ldnoobw/<lang>.txt     one blocked word or phrase per line
//   ut1/domains.txt        one blocked domain per line
//   manifest.json          optional checksum pins, verified on load
//
// Lines starting with '#' are comments. Entries are normalized with the same
// pipeline as document text so matching is exact on the normalized view.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace curate {

class AssetError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct SignalAssets {
    // language -> stop word set (normalized words)
    std::map<std::string, std::unordered_set<std::string>> stopwords;
    // language -> blocked phrases, each a normalized word sequence
    std::map<std::string, std::vector<std::vector<std::string>>> ldnoobw_phrases;
    std::unordered_set<std::string> ut1_blacklist_domains;
    std::string default_language = "en";

    // Fixed by the signal definitions.
    static const std::set<char32_t>& bullet_prefixes();
    static const std::vector<std::string>& symbol_tokens();

    bool has_language(const std::string& lang) const {
        return stopwords.count(lang) && ldnoobw_phrases.count(lang);
    }

    // Loads every list found under `dir`. If manifest.json is present, file
    // checksums are verified against it and a mismatch throws AssetError.
    static SignalAssets load(const std::string& dir);

    // In-memory construction for tests and embedded defaults.
    void add_stopwords(const std::string& lang, const std::vector<std::string>& words);
    void add_ldnoobw(const std::string& lang, const std::vector<std::string>& phrases);
};

// Checksum used to pin asset file versions (hex, "fnv1a64:" prefixed).
std::string asset_checksum(const std::string& file_contents);

}  // namespace curate
