// Static Unicode tables backing NFKC normalization and character classes.
// The arrays live in unicode_data.cpp, generated by tools/gen_unicode_data.py.

#pragma once

#include <cstddef>
#include <cstdint>

namespace curate::unidata {

struct DecompEntry {
    char32_t cp;
    std::uint32_t offset;
    std::uint16_t length;
};

struct CccEntry {
    char32_t cp;
    std::uint8_t ccc;
};

struct ComposeEntry {
    std::uint64_t key;  // (first << 32) | second
    char32_t composed;
};

struct LowerEntry {
    char32_t cp;
    std::uint32_t offset;
    std::uint16_t length;
};

struct Range {
    char32_t lo;
    char32_t hi;
};

extern const DecompEntry kDecomp[];
extern const std::size_t kDecompCount;
extern const char32_t kDecompBuf[];

extern const CccEntry kCcc[];
extern const std::size_t kCccCount;

extern const ComposeEntry kCompose[];
extern const std::size_t kComposeCount;

extern const LowerEntry kLower[];
extern const std::size_t kLowerCount;
extern const char32_t kLowerBuf[];

extern const Range kAlpha[];
extern const std::size_t kAlphaCount;

extern const Range kSpace[];
extern const std::size_t kSpaceCount;

}  // namespace curate::unidata
