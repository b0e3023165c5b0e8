// Core document record and its JSON Lines wire form.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace curate {

struct Document {
    std::string id;
    std::string text;
    std::optional<std::string> url;
    std::optional<std::string> language;  // 2-letter code
    std::optional<double> ccnet_language_score;
    std::optional<std::uint64_t> ccnet_length;  // character count
    std::string source_dataset;
    // Fields we do not interpret, preserved verbatim on passthrough.
    nlohmann::json extra = nlohmann::json::object();

    // ccnet_length when provided, otherwise the raw character count.
    std::uint64_t effective_char_count() const;
};

class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// One JSONL record <-> Document. parse_document throws ParseError on
// malformed JSON or a missing/invalid id or text field.
Document parse_document(const std::string& line);
std::string serialize_document(const Document& doc);

}  // namespace curate
