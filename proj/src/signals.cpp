#include "curate/signals.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "curate/util.hpp"

namespace curate {

namespace {

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return 0;
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

std::string_view trim_trailing_space(std::string_view s) {
    while (!s.empty()) {
        unsigned char c = static_cast<unsigned char>(s.back());
        if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
            s.remove_suffix(1);
        } else {
            break;
        }
    }
    return s;
}

// Key for a word n-gram starting at `pos`: words joined with a 0x1F
// separator, which cannot occur inside a word.
std::string ngram_key(const std::vector<std::string>& words, std::size_t pos, int n) {
    std::string key;
    for (int i = 0; i < n; ++i) {
        if (i) key.push_back('\x1f');
        key += words[pos + i];
    }
    return key;
}

const std::unordered_set<std::string>& stopword_set(const SignalAssets& assets,
                                                    const std::string& language) {
    auto it = assets.stopwords.find(language);
    if (it == assets.stopwords.end()) {
        throw SignalError("no stopword list for language '" + language + "'");
    }
    return it->second;
}

}  // namespace

const std::vector<std::string>& signal_names() {
    static const std::vector<std::string> kNames = {
        "ccnet_language_score",
        "ccnet_length",
        "rps_doc_frac_lines_end_with_ellipsis",
        "rps_doc_frac_no_alph_words",
        "rps_doc_lorem_ipsum",
        "rps_doc_mean_word_length",
        "rps_doc_stop_word_fraction",
        "rps_doc_symbol_to_word_ratio",
        "rps_doc_word_count",
        "rps_lines_start_with_bulletpoint",
        "rps_doc_frac_chars_dupe_5grams",
        "rps_doc_frac_chars_dupe_6grams",
        "rps_doc_frac_chars_dupe_7grams",
        "rps_doc_frac_chars_dupe_8grams",
        "rps_doc_frac_chars_dupe_9grams",
        "rps_doc_frac_chars_dupe_10grams",
        "rps_doc_frac_chars_top_2gram",
        "rps_doc_frac_chars_top_3gram",
        "rps_doc_frac_chars_top_4gram",
        "rps_doc_ldnoobw_words",
        "rps_doc_ut1_blacklist",
    };
    return kNames;
}

bool is_known_signal(const std::string& name) {
    const auto& names = signal_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::optional<double> QualitySignals::value_of(const std::string& name) const {
    if (name == "ccnet_language_score") {
        if (!ccnet_language_score) return std::nullopt;
        return *ccnet_language_score;
    }
    if (name == "ccnet_length") return static_cast<double>(ccnet_length);
    if (name == "rps_doc_frac_lines_end_with_ellipsis") return frac_lines_end_with_ellipsis;
    if (name == "rps_doc_frac_no_alph_words") return frac_no_alph_words;
    if (name == "rps_doc_lorem_ipsum") return lorem_ipsum_ratio;
    if (name == "rps_doc_mean_word_length") return mean_word_length;
    if (name == "rps_doc_stop_word_fraction") return stop_word_fraction;
    if (name == "rps_doc_symbol_to_word_ratio") return symbol_to_word_ratio;
    if (name == "rps_doc_word_count") return static_cast<double>(word_count);
    if (name == "rps_lines_start_with_bulletpoint") return frac_lines_start_with_bulletpoint;
    if (name == "rps_doc_ldnoobw_words") return static_cast<double>(ldnoobw_word_count);
    if (name == "rps_doc_ut1_blacklist") return url_domain_blacklisted ? 1.0 : 0.0;
    for (int n = 5; n <= 10; ++n) {
        if (name == "rps_doc_frac_chars_dupe_" + std::to_string(n) + "grams") {
            auto it = frac_chars_dupe_ngrams.find(n);
            return it == frac_chars_dupe_ngrams.end() ? 0.0 : it->second;
        }
    }
    for (int n = 2; n <= 4; ++n) {
        if (name == "rps_doc_frac_chars_top_" + std::to_string(n) + "gram") {
            auto it = frac_chars_top_ngram.find(n);
            return it == frac_chars_top_ngram.end() ? 0.0 : it->second;
        }
    }
    throw SignalError("unknown signal name '" + name + "'");
}

nlohmann::json QualitySignals::to_json(const std::string& doc_id) const {
    nlohmann::json j;
    j["id"] = doc_id;
    for (const auto& name : signal_names()) {
        auto v = value_of(name);
        if (!v) {
            j[name] = nullptr;
        } else if (name == "ccnet_length" || name == "rps_doc_word_count" ||
                   name == "rps_doc_ldnoobw_words") {
            j[name] = static_cast<std::uint64_t>(*v);
        } else if (name == "rps_doc_ut1_blacklist") {
            j[name] = (*v != 0.0);
        } else {
            j[name] = *v;
        }
    }
    return j;
}

double frac_lines_end_with_ellipsis(std::string_view raw_text) {
    auto lines = split_lines(raw_text);
    if (lines.empty()) return 0.0;
    std::size_t hits = 0;
    for (auto line : lines) {
        std::string_view t = trim_trailing_space(line);
        if (t.ends_with("...") || t.ends_with("…")) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(lines.size());
}

double frac_no_alph_words(const WordSequence& words) {
    if (words.empty()) return 0.0;
    std::size_t no_alpha = 0;
    for (const auto& w : words.words) {
        bool has_alpha = false;
        for (char32_t cp : utf8_decode(w)) {
            if (is_alpha(cp)) {
                has_alpha = true;
                break;
            }
        }
        if (!has_alpha) ++no_alpha;
    }
    return static_cast<double>(no_alpha) / static_cast<double>(words.size());
}

double lorem_ipsum_ratio(std::string_view normalized_text) {
    if (normalized_text.empty()) return 0.0;
    std::size_t occurrences = count_occurrences(normalized_text, "lorem ipsum");
    if (occurrences == 0) return 0.0;
    return static_cast<double>(occurrences) /
           static_cast<double>(codepoint_count(normalized_text));
}

double mean_word_length(const WordSequence& words) {
    if (words.empty()) return 0.0;
    return static_cast<double>(words.char_count) / static_cast<double>(words.size());
}

double stop_word_fraction(const WordSequence& words, const SignalAssets& assets,
                          const std::string& language) {
    const auto& stops = stopword_set(assets, language);
    if (words.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& w : words.words) {
        if (stops.count(w)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(words.size());
}

double symbol_to_word_ratio(const WordSequence& words, const SignalAssets& assets) {
    if (words.empty()) return 0.0;
    std::size_t symbols = 0;
    for (const auto& w : words.words) {
        for (const auto& token : assets.symbol_tokens()) {
            symbols += count_occurrences(w, token);
        }
    }
    return static_cast<double>(symbols) / static_cast<double>(words.size());
}

double frac_lines_start_with_bulletpoint(std::string_view raw_text, const SignalAssets& assets) {
    auto lines = split_lines(raw_text);
    if (lines.empty()) return 0.0;
    const auto& bullets = assets.bullet_prefixes();
    std::size_t hits = 0;
    for (auto line : lines) {
        std::u32string cps = utf8_decode(line);
        for (char32_t cp : cps) {
            if (is_space(cp)) continue;
            if (bullets.count(cp)) ++hits;
            break;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(lines.size());
}

double frac_chars_dupe_ngrams(const WordSequence& words, int n) {
    const std::size_t count = words.size();
    if (n < 1 || count < static_cast<std::size_t>(n) || words.char_count == 0) return 0.0;

    std::unordered_map<std::string, std::size_t> gram_counts;
    const std::size_t grams = count - static_cast<std::size_t>(n) + 1;
    gram_counts.reserve(grams * 2);
    for (std::size_t i = 0; i < grams; ++i) {
        ++gram_counts[ngram_key(words.words, i, n)];
    }

    std::vector<char> covered(count, 0);
    for (std::size_t i = 0; i < grams; ++i) {
        if (gram_counts[ngram_key(words.words, i, n)] >= 2) {
            for (int k = 0; k < n; ++k) covered[i + static_cast<std::size_t>(k)] = 1;
        }
    }

    std::size_t marked_chars = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (covered[i]) marked_chars += codepoint_count(words.words[i]);
    }
    return static_cast<double>(marked_chars) / static_cast<double>(words.char_count);
}

double frac_chars_top_ngram(const WordSequence& words, int n) {
    const std::size_t count = words.size();
    if (n < 1 || count < static_cast<std::size_t>(n) || words.char_count == 0) return 0.0;

    struct GramInfo {
        std::size_t count = 0;
        std::size_t first_pos = 0;
        std::size_t char_mass = 0;
    };
    std::unordered_map<std::string, GramInfo> grams;
    const std::size_t total = count - static_cast<std::size_t>(n) + 1;
    grams.reserve(total * 2);
    for (std::size_t i = 0; i < total; ++i) {
        auto [it, inserted] = grams.try_emplace(ngram_key(words.words, i, n));
        GramInfo& info = it->second;
        if (inserted) {
            info.first_pos = i;
            for (int k = 0; k < n; ++k) {
                info.char_mass += codepoint_count(words.words[i + static_cast<std::size_t>(k)]);
            }
        }
        ++info.count;
    }

    const GramInfo* top = nullptr;
    for (const auto& [key, info] : grams) {
        if (!top || info.count > top->count ||
            (info.count == top->count && info.first_pos < top->first_pos)) {
            top = &info;
        }
    }
    double frac = static_cast<double>(top->count * top->char_mass) /
                  static_cast<double>(words.char_count);
    return std::min(frac, 1.0);
}

std::uint64_t ldnoobw_count(const WordSequence& words, const SignalAssets& assets,
                            const std::string& language) {
    auto it = assets.ldnoobw_phrases.find(language);
    if (it == assets.ldnoobw_phrases.end()) {
        throw SignalError("no LDNOOBW list for language '" + language + "'");
    }
    // Longest match first at each position, non-overlapping.
    std::vector<const std::vector<std::string>*> phrases;
    phrases.reserve(it->second.size());
    for (const auto& p : it->second) phrases.push_back(&p);
    std::sort(phrases.begin(), phrases.end(),
              [](const auto* a, const auto* b) { return a->size() > b->size(); });

    std::uint64_t count = 0;
    std::size_t i = 0;
    while (i < words.size()) {
        std::size_t matched = 0;
        for (const auto* phrase : phrases) {
            if (phrase->size() > words.size() - i) continue;
            if (std::equal(phrase->begin(), phrase->end(), words.words.begin() + i)) {
                matched = phrase->size();
                break;
            }
        }
        if (matched) {
            ++count;
            i += matched;
        } else {
            ++i;
        }
    }
    return count;
}

std::string url_host(std::string_view url) {
    std::string_view rest = url;
    if (auto scheme = rest.find("://"); scheme != std::string_view::npos) {
        rest = rest.substr(scheme + 3);
    }
    if (auto at = rest.find('@'); at != std::string_view::npos &&
                                  at < rest.find_first_of("/?#")) {
        rest = rest.substr(at + 1);
    }
    if (auto cut = rest.find_first_of("/?#"); cut != std::string_view::npos) {
        rest = rest.substr(0, cut);
    }
    if (auto colon = rest.rfind(':'); colon != std::string_view::npos &&
                                      rest.find(']') == std::string_view::npos) {
        rest = rest.substr(0, colon);
    }
    std::string host;
    host.reserve(rest.size());
    for (char c : rest) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (std::isspace(uc)) return {};  // not a parseable host
        host.push_back(static_cast<char>(std::tolower(uc)));
    }
    if (!host.empty() && host.back() == '.') host.pop_back();
    return host;
}

bool check_ut1_blacklist(const std::string& url, const SignalAssets& assets,
                         bool* warned_unparseable) {
    if (warned_unparseable) *warned_unparseable = false;
    std::string host = url_host(url);
    if (host.empty()) {
        if (warned_unparseable) *warned_unparseable = !url.empty();
        return false;
    }
    // Check the host and every parent-domain suffix.
    std::string_view view = host;
    while (!view.empty()) {
        if (assets.ut1_blacklist_domains.count(std::string(view))) return true;
        auto dot = view.find('.');
        if (dot == std::string_view::npos) break;
        view = view.substr(dot + 1);
    }
    return false;
}

QualitySignals compute_signals(const Document& doc, const SignalAssets& assets) {
    const std::string language = doc.language.value_or(assets.default_language);
    const std::string normalized = normalize(doc.text);
    const WordSequence words = tokenize_normalized(normalized);

    QualitySignals s;
    s.ccnet_language_score = doc.ccnet_language_score;
    s.ccnet_length = doc.effective_char_count();
    s.frac_lines_end_with_ellipsis = frac_lines_end_with_ellipsis(doc.text);
    s.frac_no_alph_words = frac_no_alph_words(words);
    s.lorem_ipsum_ratio = lorem_ipsum_ratio(normalized);
    s.mean_word_length = mean_word_length(words);
    s.stop_word_fraction = stop_word_fraction(words, assets, language);
    s.symbol_to_word_ratio = symbol_to_word_ratio(words, assets);
    s.word_count = words.size();
    s.frac_lines_start_with_bulletpoint = frac_lines_start_with_bulletpoint(doc.text, assets);
    for (int n = 5; n <= 10; ++n) s.frac_chars_dupe_ngrams[n] = frac_chars_dupe_ngrams(words, n);
    for (int n = 2; n <= 4; ++n) s.frac_chars_top_ngram[n] = frac_chars_top_ngram(words, n);
    s.ldnoobw_word_count = ldnoobw_count(words, assets, language);
    s.url_domain_blacklisted = doc.url ? check_ut1_blacklist(*doc.url, assets) : false;
    return s;
}

}  // namespace curate
