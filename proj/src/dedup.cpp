#include "curate/dedup.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "curate/text.hpp"
#include "curate/util.hpp"

namespace curate {

namespace {

// Union-find over dense indices, path halving.
class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // Attach the larger root under the smaller one; keeps the final
        // component representative order-independent.
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

   private:
    std::vector<std::size_t> parent_;
};

std::uint64_t band_bucket_hash(const MinHashSignature& sig, std::size_t band,
                               std::size_t rows) {
    std::uint64_t h = kFnvOffset ^ (band * 0x9e3779b97f4a7c15ull);
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint64_t v = sig.values[band * rows + r];
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= kFnvPrime;
        }
    }
    return mix64(h);
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> lsh_candidate_indices(
    const std::vector<MinHashSignature>& signatures, std::size_t bands, std::size_t rows) {
    if (!signatures.empty() && bands * rows > signatures.front().values.size()) {
        throw std::invalid_argument("bands * rows exceeds signature length");
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    for (std::size_t band = 0; band < bands; ++band) {
        buckets.clear();
        for (std::uint32_t i = 0; i < signatures.size(); ++i) {
            buckets[band_bucket_hash(signatures[i], band, rows)].push_back(i);
        }
        for (const auto& [hash, members] : buckets) {
            for (std::size_t a = 0; a < members.size(); ++a) {
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    pairs.emplace_back(members[a], members[b]);
                }
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

std::vector<std::pair<std::string, std::string>> lsh_candidates(
    const std::vector<MinHashSignature>& signatures, std::size_t bands, std::size_t rows) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [i, j] : lsh_candidate_indices(signatures, bands, rows)) {
        out.emplace_back(signatures[i].doc_id, signatures[j].doc_id);
    }
    return out;
}

bool DuplicateClusters::is_removed(const std::string& doc_id) const {
    for (const auto& cluster : clusters) {
        if (std::binary_search(cluster.members.begin(), cluster.members.end(), doc_id)) {
            return doc_id != cluster.survivor;
        }
    }
    return false;
}

std::size_t DuplicateClusters::removed_count() const {
    std::size_t n = 0;
    for (const auto& cluster : clusters) n += cluster.members.size() - 1;
    return n;
}

nlohmann::json DuplicateClusters::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cluster : clusters) {
        nlohmann::json removed = nlohmann::json::array();
        for (const auto& member : cluster.members) {
            if (member != cluster.survivor) removed.push_back(member);
        }
        arr.push_back({{"survivor", cluster.survivor}, {"removed", std::move(removed)}});
    }
    return arr;
}

DuplicateClusters verify_and_cluster(
    const std::vector<std::pair<std::string, std::string>>& candidates,
    const std::map<std::string, ShingleSet>& shingles, double threshold) {
    if (threshold <= 0.0 || threshold > 1.0) {
        throw std::invalid_argument("jaccard threshold must be in (0, 1]");
    }
    // Dense indexing over the ids that appear in candidate pairs.
    std::vector<const std::string*> ids;
    std::unordered_map<std::string, std::size_t> index;
    auto intern = [&](const std::string& id) {
        auto it = shingles.find(id);
        if (it == shingles.end()) {
            throw std::runtime_error("candidate references unknown doc id '" + id + "'");
        }
        auto [pos, inserted] = index.try_emplace(id, ids.size());
        if (inserted) ids.push_back(&it->first);
        return pos->second;
    };

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [a, b] : candidates) {
        std::size_t ia = intern(a);
        std::size_t ib = intern(b);
        if (ia == ib) continue;
        if (exact_jaccard(shingles.at(a), shingles.at(b)) >= threshold) {
            edges.emplace_back(ia, ib);
        }
    }

    UnionFind uf(ids.size());
    for (auto [a, b] : edges) uf.unite(a, b);

    std::unordered_map<std::size_t, std::vector<std::string>> components;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        components[uf.find(i)].push_back(*ids[i]);
    }

    DuplicateClusters result;
    for (auto& [root, members] : components) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end());
        DuplicateCluster cluster;
        cluster.survivor = members.front();
        cluster.members = std::move(members);
        result.clusters.push_back(std::move(cluster));
    }
    std::sort(result.clusters.begin(), result.clusters.end(),
              [](const DuplicateCluster& a, const DuplicateCluster& b) {
                  return a.survivor < b.survivor;
              });
    return result;
}

NearDedupResult near_dedup(const std::vector<Document>& docs, const DedupConfig& config) {
    return near_dedup_with_signatures(docs, config, nullptr);
}

NearDedupResult near_dedup_with_signatures(const std::vector<Document>& docs,
                                           const DedupConfig& config,
                                           const std::vector<MinHashSignature>* precomputed) {
    NearDedupResult result;
    PermutationFamily family(config.permutations, config.seed);

    std::unordered_map<std::string, const MinHashSignature*> reuse;
    if (precomputed) {
        for (const auto& sig : *precomputed) reuse[sig.doc_id] = &sig;
    }

    std::map<std::string, ShingleSet> shingle_sets;
    for (const auto& doc : docs) {
        ShingleSet set = shingle(tokenize_words(doc.text), config.shingle_size, doc.id);
        if (set.empty()) {
            ++result.undedupable;
            continue;
        }
        if (precomputed) {
            auto it = reuse.find(doc.id);
            if (it == reuse.end()) {
                throw std::runtime_error("no precomputed signature for doc '" + doc.id + "'");
            }
            result.signatures.push_back(*it->second);
        } else {
            result.signatures.push_back(std::move(*minhash(set, family)));
        }
        shingle_sets.emplace(doc.id, std::move(set));
    }

    auto candidates = lsh_candidates(result.signatures, config.bands, config.rows);
    result.clusters = verify_and_cluster(candidates, shingle_sets, config.jaccard_threshold);

    std::unordered_set<std::string> removed;
    for (const auto& cluster : result.clusters.clusters) {
        for (const auto& member : cluster.members) {
            if (member != cluster.survivor) removed.insert(member);
        }
    }
    result.kept.reserve(docs.size() - removed.size());
    for (const auto& doc : docs) {
        if (!removed.count(doc.id)) result.kept.push_back(doc);
    }
    return result;
}

FuzzyDedupResult fuzzy_exact_dedup(const std::vector<Listing>& listings) {
    FuzzyDedupResult result;
    std::unordered_set<std::string> seen;
    seen.reserve(listings.size() * 2);
    for (const auto& listing : listings) {
        std::string key = normalize(listing.title);
        key.push_back('\x1f');
        key += normalize(listing.description);
        if (seen.insert(std::move(key)).second) {
            result.kept.push_back(listing);
        } else {
            ++result.removed;
        }
    }
    return result;
}

}  // namespace curate
