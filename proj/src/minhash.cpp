#include "curate/minhash.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "curate/util.hpp"

namespace curate {

namespace {

constexpr std::uint64_t kMersenne61 = (1ull << 61) - 1;

std::uint64_t mod_mersenne61(unsigned __int128 x) {
    std::uint64_t lo = static_cast<std::uint64_t>(x & kMersenne61);
    std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
    std::uint64_t r = lo + hi;
    if (r >= kMersenne61) r -= kMersenne61;
    return r;
}

std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
    return mod_mersenne61(static_cast<unsigned __int128>(a) * b);
}

}  // namespace

ShingleSet shingle(const WordSequence& words, int k, std::string doc_id) {
    if (k < 1) throw std::invalid_argument("shingle size must be >= 1");
    ShingleSet set;
    set.doc_id = std::move(doc_id);
    const std::size_t count = words.size();
    if (count < static_cast<std::size_t>(k)) return set;

    set.shingles.reserve(count - static_cast<std::size_t>(k) + 1);
    std::string buf;
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= count; ++i) {
        buf.clear();
        for (int j = 0; j < k; ++j) {
            if (j) buf.push_back('\x1f');
            buf += words.words[i + static_cast<std::size_t>(j)];
        }
        set.shingles.push_back(hash64(buf));
    }
    std::sort(set.shingles.begin(), set.shingles.end());
    set.shingles.erase(std::unique(set.shingles.begin(), set.shingles.end()),
                       set.shingles.end());
    return set;
}

double exact_jaccard(const ShingleSet& a, const ShingleSet& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < a.shingles.size() && j < b.shingles.size()) {
        if (a.shingles[i] == b.shingles[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a.shingles[i] < b.shingles[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    std::size_t uni = a.shingles.size() + b.shingles.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

PermutationFamily::PermutationFamily(std::size_t count, std::uint64_t seed) : seed_(seed) {
    mult_.reserve(count);
    add_.reserve(count);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        mult_.push_back(1 + rng.bounded(kMersenne61 - 1));  // in [1, p-1]
        add_.push_back(rng.bounded(kMersenne61));           // in [0, p-1]
    }
}

std::uint64_t PermutationFamily::apply(std::size_t index, std::uint64_t value) const {
    std::uint64_t x = value % kMersenne61;
    std::uint64_t r = mulmod61(mult_[index], x) + add_[index];
    if (r >= kMersenne61) r -= kMersenne61;
    return r;
}

std::optional<MinHashSignature> minhash(const ShingleSet& shingles,
                                        const PermutationFamily& family) {
    if (shingles.empty()) return std::nullopt;
    MinHashSignature sig;
    sig.doc_id = shingles.doc_id;
    sig.values.assign(family.size(), ~0ull);
    for (std::uint64_t sh : shingles.shingles) {
        for (std::size_t p = 0; p < family.size(); ++p) {
            std::uint64_t h = family.apply(p, sh);
            if (h < sig.values[p]) sig.values[p] = h;
        }
    }
    return sig;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.values.empty() || a.values.size() != b.values.size()) return 0.0;
    std::size_t matches = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] == b.values[i]) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(a.values.size());
}

void write_signatures(const std::string& path, const std::vector<MinHashSignature>& signatures) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open signature file for writing: " + path);
    for (const auto& sig : signatures) {
        std::uint32_t len = static_cast<std::uint32_t>(sig.doc_id.size());
        unsigned char lenbuf[4] = {
            static_cast<unsigned char>(len & 0xff),
            static_cast<unsigned char>((len >> 8) & 0xff),
            static_cast<unsigned char>((len >> 16) & 0xff),
            static_cast<unsigned char>((len >> 24) & 0xff),
        };
        out.write(reinterpret_cast<const char*>(lenbuf), 4);
        out.write(sig.doc_id.data(), static_cast<std::streamsize>(sig.doc_id.size()));
        for (std::uint64_t v : sig.values) {
            unsigned char buf[8];
            for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
            out.write(reinterpret_cast<const char*>(buf), 8);
        }
    }
    if (!out) throw std::runtime_error("failed writing signature file: " + path);
}

std::vector<MinHashSignature> read_signatures(const std::string& path,
                                              std::size_t permutations) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open signature file: " + path);
    std::vector<MinHashSignature> out;
    while (true) {
        unsigned char lenbuf[4];
        in.read(reinterpret_cast<char*>(lenbuf), 4);
        if (in.gcount() == 0 && in.eof()) break;
        if (in.gcount() != 4) throw std::runtime_error("truncated signature record in " + path);
        std::uint32_t len = static_cast<std::uint32_t>(lenbuf[0]) |
                            (static_cast<std::uint32_t>(lenbuf[1]) << 8) |
                            (static_cast<std::uint32_t>(lenbuf[2]) << 16) |
                            (static_cast<std::uint32_t>(lenbuf[3]) << 24);
        MinHashSignature sig;
        sig.doc_id.resize(len);
        in.read(sig.doc_id.data(), len);
        if (in.gcount() != static_cast<std::streamsize>(len)) {
            throw std::runtime_error("truncated signature record in " + path);
        }
        sig.values.resize(permutations);
        for (std::size_t p = 0; p < permutations; ++p) {
            unsigned char buf[8];
            in.read(reinterpret_cast<char*>(buf), 8);
            if (in.gcount() != 8) throw std::runtime_error("truncated signature record in " + path);
            std::uint64_t v = 0;
            for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
            sig.values[p] = v;
        }
        out.push_back(std::move(sig));
    }
    return out;
}

}  // namespace curate
