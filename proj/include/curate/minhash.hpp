// Shingling and MinHash signatures. Slot-match rate between two signatures
// estimates the Jaccard similarity of the underlying shingle sets.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curate/text.hpp"

namespace curate {

struct ShingleSet {
    std::string doc_id;
    // Sorted, unique 64-bit hashes of word k-shingles.
    std::vector<std::uint64_t> shingles;

    bool empty() const { return shingles.empty(); }
};

// All contiguous k-word windows over normalized words, hashed. Documents with
// fewer than k words produce an empty set.
ShingleSet shingle(const WordSequence& words, int k, std::string doc_id = {});

// Exact Jaccard similarity |A∩B| / |A∪B| over shingle sets.
double exact_jaccard(const ShingleSet& a, const ShingleSet& b);

// Seeded family of P pairwise-independent affine hash functions over the
// 61-bit Mersenne prime field; reproducible across runs and machines.
class PermutationFamily {
   public:
    PermutationFamily(std::size_t count, std::uint64_t seed);

    std::size_t size() const { return mult_.size(); }
    std::uint64_t seed() const { return seed_; }

    std::uint64_t apply(std::size_t index, std::uint64_t value) const;

   private:
    std::uint64_t seed_;
    std::vector<std::uint64_t> mult_;
    std::vector<std::uint64_t> add_;
};

struct MinHashSignature {
    std::string doc_id;
    std::vector<std::uint64_t> values;  // one minimum per permutation
};

// Per-permutation minimum over the shingle set. Empty sets have no signature
// (nullopt): such documents cannot participate in near-dedup and bypass it.
std::optional<MinHashSignature> minhash(const ShingleSet& shingles,
                                        const PermutationFamily& family);

// Fraction of matching signature slots.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

// Binary sidecar persistence. Record layout: u32 LE id length, id bytes, then
// P u64 LE signature values. P is fixed by configuration, not stored.
void write_signatures(const std::string& path, const std::vector<MinHashSignature>& signatures);
std::vector<MinHashSignature> read_signatures(const std::string& path, std::size_t permutations);

}  // namespace curate
