// Small shared utilities: UTF-8 transcoding, 64-bit hashing, and a
// deterministic RNG used everywhere randomness is needed. All of these are
// fixed-width and platform-independent so pipeline output is reproducible
// across machines.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace curate {

// ---------------------------------------------------------------------------
// UTF-8

// Decodes UTF-8 bytes into codepoints. Invalid sequences decode to U+FFFD,
// one replacement per offending byte; input is expected to be valid UTF-8.
std::u32string utf8_decode(std::string_view text);

void utf8_append(std::string& out, char32_t cp);
std::string utf8_encode(const std::u32string& cps);

// Number of codepoints in a UTF-8 string.
std::size_t codepoint_count(std::string_view text);

// ---------------------------------------------------------------------------
// Hashing

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

constexpr std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = kFnvOffset) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

// Murmur3 finalizer; full 64-bit avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 33;
    return x;
}

// General-purpose 64-bit content hash (FNV-1a core with avalanche tail).
constexpr std::uint64_t hash64(std::string_view data) { return mix64(fnv1a64(data)); }

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64). std::shuffle and the std distributions are
// implementation-defined, so anything that must reproduce byte-identically
// goes through this instead.

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) via 128-bit multiply; n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = bounded(i);
            std::swap(v[i - 1], v[j]);
        }
    }

   private:
    std::uint64_t state_;
};

// Stage-scoped seed derivation: one global seed, independent streams per
// stage name.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stage) {
    return mix64(global_seed ^ hash64(stage));
}

}  // namespace curate
