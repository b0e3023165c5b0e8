#include "curate/text.hpp"

#include <algorithm>
#include <cstdint>

#include "curate/util.hpp"
#include "unicode_data.hpp"

namespace curate {

namespace {

using namespace unidata;

// Hangul syllable composition constants (Unicode chapter 3.12).
constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

const DecompEntry* find_decomp(char32_t cp) {
    const DecompEntry* end = kDecomp + kDecompCount;
    const DecompEntry* it = std::lower_bound(
        kDecomp, end, cp, [](const DecompEntry& e, char32_t c) { return e.cp < c; });
    return (it != end && it->cp == cp) ? it : nullptr;
}

std::uint8_t combining_class(char32_t cp) {
    const CccEntry* end = kCcc + kCccCount;
    const CccEntry* it = std::lower_bound(
        kCcc, end, cp, [](const CccEntry& e, char32_t c) { return e.cp < c; });
    return (it != end && it->cp == cp) ? it->ccc : 0;
}

char32_t compose_pair(char32_t a, char32_t b) {
    // Algorithmic Hangul LV / LVT composition.
    if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount && b >= kHangulVBase &&
        b < kHangulVBase + kHangulVCount) {
        return kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
    }
    if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount &&
        (a - kHangulSBase) % kHangulTCount == 0 && b > kHangulTBase &&
        b < kHangulTBase + kHangulTCount) {
        return a + (b - kHangulTBase);
    }
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    const ComposeEntry* end = kCompose + kComposeCount;
    const ComposeEntry* it = std::lower_bound(
        kCompose, end, key, [](const ComposeEntry& e, std::uint64_t k) { return e.key < k; });
    return (it != end && it->key == key) ? it->composed : 0;
}

void decompose_into(char32_t cp, std::u32string& out) {
    if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
        char32_t s = cp - kHangulSBase;
        out.push_back(kHangulLBase + s / kHangulNCount);
        out.push_back(kHangulVBase + (s % kHangulNCount) / kHangulTCount);
        char32_t t = s % kHangulTCount;
        if (t != 0) out.push_back(kHangulTBase + t);
        return;
    }
    if (const DecompEntry* e = find_decomp(cp)) {
        out.append(kDecompBuf + e->offset, e->length);
        return;
    }
    out.push_back(cp);
}

// Stable-sorts combining marks by combining class (canonical ordering).
void canonical_order(std::u32string& s) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        std::uint8_t cc = combining_class(s[i]);
        if (cc == 0) continue;
        std::size_t j = i;
        while (j > 0) {
            std::uint8_t prev = combining_class(s[j - 1]);
            if (prev == 0 || prev <= cc) break;
            std::swap(s[j - 1], s[j]);
            --j;
        }
    }
}

void canonical_compose(std::u32string& s) {
    if (s.empty()) return;
    std::u32string out;
    out.reserve(s.size());
    out.push_back(s[0]);
    std::ptrdiff_t starter = combining_class(s[0]) == 0 ? 0 : -1;
    std::uint8_t last_ccc = combining_class(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i) {
        char32_t c = s[i];
        std::uint8_t cc = combining_class(c);
        bool blocked = true;
        if (starter >= 0) {
            if (static_cast<std::size_t>(starter) == out.size() - 1) {
                blocked = false;  // adjacent to the starter
            } else {
                blocked = last_ccc >= cc;
            }
        }
        if (!blocked) {
            if (char32_t comp = compose_pair(out[static_cast<std::size_t>(starter)], c)) {
                out[static_cast<std::size_t>(starter)] = comp;
                continue;
            }
        }
        out.push_back(c);
        if (cc == 0) starter = static_cast<std::ptrdiff_t>(out.size()) - 1;
        last_ccc = cc;
    }
    s.swap(out);
}

void lower_into(char32_t cp, std::u32string& out) {
    const LowerEntry* end = kLower + kLowerCount;
    const LowerEntry* it = std::lower_bound(
        kLower, end, cp, [](const LowerEntry& e, char32_t c) { return e.cp < c; });
    if (it != end && it->cp == cp) {
        out.append(kLowerBuf + it->offset, it->length);
    } else {
        out.push_back(cp);
    }
}

bool in_ranges(const Range* ranges, std::size_t count, char32_t cp) {
    const Range* end = ranges + count;
    const Range* it = std::upper_bound(
        ranges, end, cp, [](char32_t c, const Range& r) { return c < r.lo; });
    return it != ranges && cp <= (it - 1)->hi;
}

}  // namespace

std::u32string to_nfkc(const std::u32string& in) {
    std::u32string decomposed;
    decomposed.reserve(in.size());
    for (char32_t cp : in) decompose_into(cp, decomposed);
    canonical_order(decomposed);
    canonical_compose(decomposed);
    return decomposed;
}

bool is_alpha(char32_t cp) { return in_ranges(unidata::kAlpha, unidata::kAlphaCount, cp); }
bool is_space(char32_t cp) { return in_ranges(unidata::kSpace, unidata::kSpaceCount, cp); }

std::string normalize(std::string_view text) {
    if (text.empty()) return {};
    std::u32string cps = to_nfkc(utf8_decode(text));
    std::u32string lowered;
    lowered.reserve(cps.size());
    for (char32_t cp : cps) lower_into(cp, lowered);
    // The lowercase table folds its outputs through NFKC, but composition can
    // still be possible across original codepoint boundaries.
    lowered = to_nfkc(lowered);

    std::u32string collapsed;
    collapsed.reserve(lowered.size());
    bool pending_space = false;
    for (char32_t cp : lowered) {
        if (is_space(cp)) {
            pending_space = !collapsed.empty();
            continue;
        }
        if (pending_space) {
            collapsed.push_back(U' ');
            pending_space = false;
        }
        collapsed.push_back(cp);
    }
    return utf8_encode(collapsed);
}

WordSequence tokenize_normalized(std::string_view normalized) {
    WordSequence seq;
    std::size_t start = 0;
    const std::size_t n = normalized.size();
    for (std::size_t i = 0; i <= n; ++i) {
        if (i == n || normalized[i] == ' ') {
            if (i > start) {
                std::string_view w = normalized.substr(start, i - start);
                seq.words.emplace_back(w);
                seq.char_count += codepoint_count(w);
            }
            start = i + 1;
        }
    }
    return seq;
}

WordSequence tokenize_words(std::string_view text) { return tokenize_normalized(normalize(text)); }

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    if (text.empty()) return lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

}  // namespace curate
