// Near-duplicate removal: LSH banding over MinHash signatures proposes
// candidate pairs, exact shingle-set Jaccard verifies them, and union-find
// clusters the survivors. Also the normalize-then-exact "fuzzy" dedup used
// for listings.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "curate/document.hpp"
#include "curate/listing.hpp"
#include "curate/minhash.hpp"

namespace curate {

struct DedupConfig {
    int shingle_size = 5;
    std::size_t permutations = 256;
    std::size_t bands = 16;
    std::size_t rows = 16;
    double jaccard_threshold = 0.8;
    std::uint64_t seed = 0x5eedc0de;
};

// Candidate pairs: indices into `signatures`, i < j, sorted and unique. A
// pair is a candidate iff the signatures agree on all rows of at least one
// band.
std::vector<std::pair<std::uint32_t, std::uint32_t>> lsh_candidate_indices(
    const std::vector<MinHashSignature>& signatures, std::size_t bands, std::size_t rows);

// Same, as doc-id pairs.
std::vector<std::pair<std::string, std::string>> lsh_candidates(
    const std::vector<MinHashSignature>& signatures, std::size_t bands, std::size_t rows);

struct DuplicateCluster {
    std::string survivor;               // lexicographically smallest member
    std::vector<std::string> members;   // sorted, includes the survivor
};

struct DuplicateClusters {
    // Sorted by survivor id; only clusters with >= 2 members.
    std::vector<DuplicateCluster> clusters;

    bool is_removed(const std::string& doc_id) const;
    std::size_t removed_count() const;
    nlohmann::json to_json() const;
};

// Keeps candidate pairs whose exact Jaccard similarity over the given
// shingle sets is >= threshold, then builds connected components. Throws on
// a candidate doc id with no shingle set. Output is independent of the
// ordering of `candidates`.
DuplicateClusters verify_and_cluster(
    const std::vector<std::pair<std::string, std::string>>& candidates,
    const std::map<std::string, ShingleSet>& shingles, double threshold);

struct NearDedupResult {
    std::vector<Document> kept;   // input order preserved
    DuplicateClusters clusters;
    std::uint64_t undedupable = 0;  // too short to shingle; always kept
    std::vector<MinHashSignature> signatures;
};

// Whole-corpus near dedup. Documents shorter than the shingle size bypass
// the index and are always kept.
NearDedupResult near_dedup(const std::vector<Document>& docs, const DedupConfig& config);

// Same, but reuses signatures from a previous run (e.g. the sidecar file)
// instead of recomputing them; shingle sets are still derived for exact
// verification. Pass nullptr to compute signatures fresh.
NearDedupResult near_dedup_with_signatures(const std::vector<Document>& docs,
                                           const DedupConfig& config,
                                           const std::vector<MinHashSignature>* precomputed);

struct FuzzyDedupResult {
    std::vector<Listing> kept;
    std::uint64_t removed = 0;
};

// Exact dedup on the normalized (title, description) key; first occurrence
// in stream order survives.
FuzzyDedupResult fuzzy_exact_dedup(const std::vector<Listing>& listings);

}  // namespace curate
