// Text normalization and tokenization shared by the signal and dedup stages.
//
// normalize() is the one canonical text view: NFKC, lowercased, runs of
// whitespace collapsed to single spaces, outer whitespace stripped. Word
// signals operate on this view; line signals operate on the raw text because
// normalization destroys line structure.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace curate {

struct WordSequence {
    std::vector<std::string> words;
    std::size_t char_count = 0;  // codepoints, whitespace excluded

    bool empty() const { return words.empty(); }
    std::size_t size() const { return words.size(); }
};

// NFKC -> lowercase -> whitespace collapse -> strip. Idempotent.
std::string normalize(std::string_view text);

// Words of normalize(text): maximal non-whitespace runs.
WordSequence tokenize_words(std::string_view text);

// Same, for text that is already normalized (skips the re-normalization).
WordSequence tokenize_normalized(std::string_view normalized);

// Splits raw text on '\n'. A trailing empty line from a final newline is
// dropped; interior empty lines are kept; line content is untouched.
std::vector<std::string_view> split_lines(std::string_view text);

// Unicode character classes (full Unicode tables, not ASCII).
bool is_alpha(char32_t cp);
bool is_space(char32_t cp);

// NFKC normalization alone, for callers that need it without case folding.
std::u32string to_nfkc(const std::u32string& in);

}  // namespace curate
