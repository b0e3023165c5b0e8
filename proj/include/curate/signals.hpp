// Per-document quality signals: the heuristics used to predict corpus
// quality before any model sees the text. Word-level signals operate on the
// normalized word view; line-level signals operate on raw lines.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "curate/assets.hpp"
#include "curate/document.hpp"
#include "curate/text.hpp"

namespace curate {

class SignalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct QualitySignals {
    std::optional<double> ccnet_language_score;
    std::uint64_t ccnet_length = 0;
    double frac_lines_end_with_ellipsis = 0.0;
    double frac_no_alph_words = 0.0;
    double lorem_ipsum_ratio = 0.0;
    double mean_word_length = 0.0;
    double stop_word_fraction = 0.0;
    double symbol_to_word_ratio = 0.0;
    std::uint64_t word_count = 0;
    double frac_lines_start_with_bulletpoint = 0.0;
    std::map<int, double> frac_chars_dupe_ngrams;  // n in 5..10
    std::map<int, double> frac_chars_top_ngram;    // n in 2..4
    std::uint64_t ldnoobw_word_count = 0;
    bool url_domain_blacklisted = false;

    // Numeric value of a signal by its canonical name ("rps_doc_*" /
    // "ccnet_*"); nullopt when the signal is absent (only possible for
    // ccnet_language_score).
    std::optional<double> value_of(const std::string& name) const;

    // Flat record form: {"id": ..., "<signal name>": value, ...}.
    nlohmann::json to_json(const std::string& doc_id) const;
};

// The canonical signal names, in report order.
const std::vector<std::string>& signal_names();
bool is_known_signal(const std::string& name);

// --- individual signals ----------------------------------------------------

double frac_lines_end_with_ellipsis(std::string_view raw_text);
double frac_no_alph_words(const WordSequence& words);
double lorem_ipsum_ratio(std::string_view normalized_text);
double mean_word_length(const WordSequence& words);
double stop_word_fraction(const WordSequence& words, const SignalAssets& assets,
                          const std::string& language);
double symbol_to_word_ratio(const WordSequence& words, const SignalAssets& assets);
double frac_lines_start_with_bulletpoint(std::string_view raw_text, const SignalAssets& assets);
// Fraction of character mass in word positions covered by an n-gram that
// occurs at least twice.
double frac_chars_dupe_ngrams(const WordSequence& words, int n);
// Character mass of the most frequent n-gram times its count, capped at 1.
double frac_chars_top_ngram(const WordSequence& words, int n);
std::uint64_t ldnoobw_count(const WordSequence& words, const SignalAssets& assets,
                            const std::string& language);
// True when the URL host or any parent domain is blacklisted. Unparseable
// URLs are treated as not blacklisted; *warned_unparseable is set when given.
bool check_ut1_blacklist(const std::string& url, const SignalAssets& assets,
                         bool* warned_unparseable = nullptr);

// Extracts the lowercased host from a URL, or empty if it cannot be parsed.
std::string url_host(std::string_view url);

// Computes the full signal vector; lines and words are derived exactly once.
QualitySignals compute_signals(const Document& doc, const SignalAssets& assets);

}  // namespace curate
