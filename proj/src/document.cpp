#include "curate/document.hpp"

#include "curate/util.hpp"

namespace curate {

using nlohmann::json;

std::uint64_t Document::effective_char_count() const {
    if (ccnet_length) return *ccnet_length;
    return codepoint_count(text);
}

Document parse_document(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ParseError("malformed JSON document record");
    }
    Document doc;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "id" && v.is_string()) {
            doc.id = v.get<std::string>();
        } else if (key == "text" && v.is_string()) {
            doc.text = v.get<std::string>();
        } else if (key == "url" && v.is_string()) {
            doc.url = v.get<std::string>();
        } else if (key == "language" && v.is_string()) {
            doc.language = v.get<std::string>();
        } else if (key == "ccnet_language_score" && v.is_number()) {
            doc.ccnet_language_score = v.get<double>();
        } else if (key == "ccnet_length" && v.is_number_unsigned()) {
            doc.ccnet_length = v.get<std::uint64_t>();
        } else if (key == "source_dataset" && v.is_string()) {
            doc.source_dataset = v.get<std::string>();
        } else if (!v.is_null()) {
            doc.extra[key] = v;
        }
    }
    if (doc.id.empty()) throw ParseError("document record missing id");
    return doc;
}

std::string serialize_document(const Document& doc) {
    json j;
    j["id"] = doc.id;
    j["text"] = doc.text;
    if (doc.url) j["url"] = *doc.url;
    if (doc.language) j["language"] = *doc.language;
    if (doc.ccnet_language_score) j["ccnet_language_score"] = *doc.ccnet_language_score;
    if (doc.ccnet_length) j["ccnet_length"] = *doc.ccnet_length;
    if (!doc.source_dataset.empty()) j["source_dataset"] = doc.source_dataset;
    for (auto it = doc.extra.begin(); it != doc.extra.end(); ++it) {
        j[it.key()] = it.value();
    }
    return j.dump();
}

}  // namespace curate
