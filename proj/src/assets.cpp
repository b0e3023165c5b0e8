#include "curate/assets.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curate/text.hpp"
#include "curate/util.hpp"

namespace fs = std::filesystem;

namespace curate {

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AssetError("cannot open asset file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Non-comment, non-empty lines of an asset file.
std::vector<std::string> asset_lines(const std::string& contents) {
    std::vector<std::string> out;
    std::istringstream ss(contents);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(line);
    }
    return out;
}

}  // namespace

const std::set<char32_t>& SignalAssets::bullet_prefixes() {
    static const std::set<char32_t> kBullets = {
        U'•', U'‣', U'▶', U'◀', U'◦',
        U'■', U'□', U'▪', U'▫', U'–',
    };
    return kBullets;
}

const std::vector<std::string>& SignalAssets::symbol_tokens() {
    static const std::vector<std::string> kSymbols = {"#", "...", "…"};
    return kSymbols;
}

void SignalAssets::add_stopwords(const std::string& lang, const std::vector<std::string>& words) {
    auto& set = stopwords[lang];
    for (const auto& w : words) {
        std::string norm = normalize(w);
        if (!norm.empty()) set.insert(norm);
    }
    ldnoobw_phrases.try_emplace(lang);
}

void SignalAssets::add_ldnoobw(const std::string& lang, const std::vector<std::string>& phrases) {
    auto& list = ldnoobw_phrases[lang];
    for (const auto& p : phrases) {
        WordSequence seq = tokenize_words(p);
        if (!seq.words.empty()) list.push_back(seq.words);
    }
    stopwords.try_emplace(lang);
}

std::string asset_checksum(const std::string& file_contents) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(hash64(file_contents)));
    return buf;
}

SignalAssets SignalAssets::load(const std::string& dir) {
    fs::path root(dir);
    if (!fs::is_directory(root)) throw AssetError("asset directory not found: " + dir);

    nlohmann::json manifest;
    fs::path manifest_path = root / "manifest.json";
    if (fs::exists(manifest_path)) {
        manifest = nlohmann::json::parse(read_file(manifest_path), nullptr, false);
        if (manifest.is_discarded()) throw AssetError("malformed assets manifest.json");
    }

    auto load_checked = [&](const fs::path& path) {
        std::string contents = read_file(path);
        std::string rel = fs::relative(path, root).generic_string();
        if (manifest.is_object() && manifest.contains(rel)) {
            std::string expect = manifest[rel].get<std::string>();
            std::string got = asset_checksum(contents);
            if (expect != got) {
                throw AssetError("asset checksum mismatch for " + rel + ": manifest pins " +
                                 expect + ", file has " + got);
            }
        }
        return contents;
    };

    SignalAssets assets;
    fs::path stop_dir = root / "stopwords";
    if (fs::is_directory(stop_dir)) {
        for (const auto& entry : fs::directory_iterator(stop_dir)) {
            if (entry.path().extension() != ".txt") continue;
            std::string lang = entry.path().stem().string();
            assets.add_stopwords(lang, asset_lines(load_checked(entry.path())));
        }
    }
    fs::path ldnoobw_dir = root / "ldnoobw";
    if (fs::is_directory(ldnoobw_dir)) {
        for (const auto& entry : fs::directory_iterator(ldnoobw_dir)) {
            if (entry.path().extension() != ".txt") continue;
            std::string lang = entry.path().stem().string();
            assets.add_ldnoobw(lang, asset_lines(load_checked(entry.path())));
        }
    }
    fs::path ut1 = root / "ut1" / "domains.txt";
    if (fs::exists(ut1)) {
        for (auto& domain : asset_lines(load_checked(ut1))) {
            std::string lower;
            for (char c : domain) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            assets.ut1_blacklist_domains.insert(lower);
        }
    }
    return assets;
}

}  // namespace curate
