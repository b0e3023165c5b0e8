#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "curate/dedup.hpp"
#include "support/fixtures.hpp"

using namespace curate;

namespace {

ShingleSet set_of(std::string id, std::initializer_list<std::uint64_t> values) {
    ShingleSet s;
    s.doc_id = std::move(id);
    s.shingles.assign(values);
    std::sort(s.shingles.begin(), s.shingles.end());
    return s;
}

ShingleSet range_set(std::string id, std::uint64_t start, std::uint64_t count) {
    ShingleSet s;
    s.doc_id = std::move(id);
    for (std::uint64_t i = 0; i < count; ++i) s.shingles.push_back(mix64(start + i));
    std::sort(s.shingles.begin(), s.shingles.end());
    s.shingles.erase(std::unique(s.shingles.begin(), s.shingles.end()), s.shingles.end());
    return s;
}

WordSequence words_of(std::initializer_list<const char*> list) {
    WordSequence seq;
    for (const char* w : list) {
        seq.words.emplace_back(w);
        seq.char_count += codepoint_count(w);
    }
    return seq;
}

}  // namespace

TEST_CASE("shingle") {
    CHECK(shingle(words_of({"a", "b", "c", "d"}), 5).empty());
    CHECK(shingle(words_of({"a", "b", "c"}), 2).shingles.size() == 2);
    WordSequence w = tokenize_words("the quick brown fox jumps over the lazy dog");
    CHECK(shingle(w, 5).shingles == shingle(w, 5).shingles);
    CHECK_THROWS(shingle(w, 0));
}

TEST_CASE("exact_jaccard") {
    ShingleSet a = set_of("a", {1, 2, 3, 4});
    ShingleSet b = set_of("b", {3, 4, 5, 6});
    CHECK(exact_jaccard(a, b) == doctest::Approx(2.0 / 6.0));
    CHECK(exact_jaccard(a, a) == 1.0);
    CHECK(exact_jaccard(a, set_of("c", {9})) == 0.0);
}

TEST_CASE("minhash determinism and empty handling") {
    PermutationFamily family(64, 42);
    ShingleSet a = range_set("a", 100, 50);
    auto s1 = minhash(a, family);
    auto s2 = minhash(a, family);
    REQUIRE(s1);
    CHECK(s1->values == s2->values);
    CHECK(!minhash(ShingleSet{}, family).has_value());
}

TEST_CASE("minhash estimates jaccard within sampling error") {
    // Fixed pair with known exact similarity; 3*sqrt(J(1-J)/P) tolerance.
    ShingleSet a = range_set("a", 0, 100);
    ShingleSet b = range_set("b", 20, 100);  // intersection 80, union 120
    double exact = exact_jaccard(a, b);
    CHECK(exact == doctest::Approx(80.0 / 120.0));
    const std::size_t P = 256;
    PermutationFamily family(P, 7);
    double est = estimate_jaccard(*minhash(a, family), *minhash(b, family));
    CHECK(std::abs(est - exact) <= 3.0 * std::sqrt(exact * (1 - exact) / double(P)));
}

TEST_CASE("minhash estimate near zero for disjoint sets") {
    ShingleSet a = range_set("a", 0, 1000);
    ShingleSet b = range_set("b", 1u << 20, 1000);
    PermutationFamily family(256, 11);
    CHECK(estimate_jaccard(*minhash(a, family), *minhash(b, family)) < 0.05);
}

TEST_CASE("mean minhash estimate over many seeds converges to exact jaccard") {
    ShingleSet a = range_set("a", 0, 60);
    ShingleSet b = range_set("b", 15, 60);  // intersection 45, union 75 -> J = 0.6
    double exact = exact_jaccard(a, b);
    double sum = 0.0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        PermutationFamily family(256, 1000 + s);
        sum += estimate_jaccard(*minhash(a, family), *minhash(b, family));
    }
    CHECK(std::abs(sum / seeds - exact) <= 0.05);
}

TEST_CASE("lsh_candidates") {
    PermutationFamily family(256, 3);

    SUBCASE("identical signatures collide") {
        ShingleSet a = range_set("a", 5, 40);
        ShingleSet b = a;
        b.doc_id = "b";
        std::vector<MinHashSignature> sigs = {*minhash(a, family), *minhash(b, family)};
        auto pairs = lsh_candidates(sigs, 16, 16);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0] == std::pair<std::string, std::string>{"a", "b"});
    }

    SUBCASE("fully distinct signatures do not collide") {
        std::vector<MinHashSignature> sigs;
        MinHashSignature x, y;
        x.doc_id = "x";
        y.doc_id = "y";
        for (int i = 0; i < 256; ++i) {
            x.values.push_back(1000 + i);
            y.values.push_back(5000 + i);
        }
        sigs = {x, y};
        CHECK(lsh_candidates(sigs, 16, 16).empty());
    }

    SUBCASE("agreement on exactly one band is enough") {
        MinHashSignature x, y;
        x.doc_id = "x";
        y.doc_id = "y";
        for (int i = 0; i < 256; ++i) {
            x.values.push_back(100 + i);
            // band 3 covers slots 48..63 with r=16
            y.values.push_back((i >= 48 && i < 64) ? 100 + i : 90000 + i);
        }
        std::vector<MinHashSignature> sigs = {x, y};
        auto pairs = lsh_candidates(sigs, 16, 16);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0] == std::pair<std::string, std::string>{"x", "y"});
    }

    SUBCASE("bands*rows must fit the signature") {
        std::vector<MinHashSignature> sigs = {*minhash(range_set("a", 0, 10), family)};
        CHECK_THROWS(lsh_candidates(sigs, 32, 16));
    }
}

TEST_CASE("verify_and_cluster") {
    std::map<std::string, ShingleSet> shingles;
    shingles["a"] = range_set("a", 0, 100);
    shingles["b"] = range_set("b", 5, 100);    // J(a,b) = 95/105 ~ 0.905
    shingles["c"] = range_set("c", 10, 100);   // J(b,c) ~ 0.905, J(a,c) = 90/110 ~ 0.818
    shingles["z"] = range_set("z", 5000, 100);

    SUBCASE("no candidates, no clusters") {
        CHECK(verify_and_cluster({}, shingles, 0.8).clusters.empty());
    }

    SUBCASE("pair above threshold forms a cluster of two") {
        auto clusters = verify_and_cluster({{"a", "b"}}, shingles, 0.8);
        REQUIRE(clusters.clusters.size() == 1);
        CHECK(clusters.clusters[0].survivor == "a");
        CHECK(clusters.clusters[0].members == std::vector<std::string>{"a", "b"});
    }

    SUBCASE("pair below threshold is dropped") {
        CHECK(verify_and_cluster({{"a", "z"}}, shingles, 0.8).clusters.empty());
    }

    SUBCASE("transitive chains merge even when endpoints are dissimilar") {
        std::map<std::string, ShingleSet> chain;
        chain["a"] = range_set("a", 0, 100);
        chain["b"] = range_set("b", 8, 100);    // J(a,b) = 92/108 ~ 0.852
        chain["c"] = range_set("c", 16, 100);   // J(b,c) ~ 0.852, J(a,c) = 84/116 ~ 0.724
        REQUIRE(exact_jaccard(chain["a"], chain["c"]) < 0.8);
        auto clusters = verify_and_cluster({{"a", "b"}, {"b", "c"}, {"a", "c"}}, chain, 0.8);
        REQUIRE(clusters.clusters.size() == 1);
        CHECK(clusters.clusters[0].members == std::vector<std::string>{"a", "b", "c"});
        CHECK(clusters.clusters[0].survivor == "a");
    }

    SUBCASE("result is independent of candidate order") {
        std::vector<std::pair<std::string, std::string>> edges = {
            {"a", "b"}, {"b", "c"}, {"a", "c"}};
        auto one = verify_and_cluster(edges, shingles, 0.8);
        std::reverse(edges.begin(), edges.end());
        auto two = verify_and_cluster(edges, shingles, 0.8);
        CHECK(one.to_json() == two.to_json());
    }

    SUBCASE("unknown doc id is an error") {
        CHECK_THROWS(verify_and_cluster({{"a", "nope"}}, shingles, 0.8));
    }

    SUBCASE("threshold must be in (0,1]") {
        CHECK_THROWS(verify_and_cluster({}, shingles, 0.0));
        CHECK_THROWS(verify_and_cluster({}, shingles, 1.5));
    }
}

TEST_CASE("near_dedup end to end") {
    DedupConfig cfg;
    cfg.shingle_size = 3;

    std::string base = "alpha beta gamma delta epsilon zeta eta theta iota kappa";
    std::vector<Document> docs = {
        fixtures::make_doc("doc-b", base),
        fixtures::make_doc("doc-a", base),  // exact duplicate, smaller id
        fixtures::make_doc("doc-c", "completely different words entirely here now"),
        fixtures::make_doc("tiny", "too short"),  // below shingle size, bypasses
    };
    NearDedupResult result = near_dedup(docs, cfg);
    CHECK(result.undedupable == 1);
    REQUIRE(result.clusters.clusters.size() == 1);
    CHECK(result.clusters.clusters[0].survivor == "doc-a");
    REQUIRE(result.kept.size() == 3);
    // Input order preserved among kept docs.
    CHECK(result.kept[0].id == "doc-a");
    CHECK(result.kept[1].id == "doc-c");
    CHECK(result.kept[2].id == "tiny");

    SUBCASE("idempotent on its own output") {
        NearDedupResult again = near_dedup(result.kept, cfg);
        CHECK(again.clusters.clusters.empty());
        CHECK(again.kept.size() == result.kept.size());
    }
}

TEST_CASE("signature sidecar round trip") {
    fixtures::TempDir tmp("sig");
    PermutationFamily family(64, 9);
    std::vector<MinHashSignature> sigs;
    sigs.push_back(*minhash(range_set("first", 0, 30), family));
    sigs.push_back(*minhash(range_set("second/with bytes \xc3\xa9", 40, 30), family));
    write_signatures(tmp.path("sigs.bin"), sigs);
    auto loaded = read_signatures(tmp.path("sigs.bin"), 64);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].doc_id == sigs[0].doc_id);
    CHECK(loaded[0].values == sigs[0].values);
    CHECK(loaded[1].doc_id == sigs[1].doc_id);
    CHECK(loaded[1].values == sigs[1].values);
}

TEST_CASE("near_dedup with precomputed signatures matches fresh computation") {
    DedupConfig cfg;
    cfg.shingle_size = 3;
    std::vector<Document> docs = {
        fixtures::make_doc("a", "one two three four five six seven"),
        fixtures::make_doc("b", "one two three four five six seven"),
        fixtures::make_doc("c", "totally different content third doc"),
    };
    NearDedupResult fresh = near_dedup(docs, cfg);
    NearDedupResult reused = near_dedup_with_signatures(docs, cfg, &fresh.signatures);
    CHECK(fresh.clusters.to_json() == reused.clusters.to_json());
}

TEST_CASE("fuzzy_exact_dedup") {
    std::vector<Listing> listings = {
        fixtures::make_listing("1", "Blue Widget", {}, "Widgets", "A fine widget."),
        fixtures::make_listing("2", "  BLUE   widget ", {}, "Widgets", "a FINE widget."),
        fixtures::make_listing("3", "Blue Widget", {}, "Widgets", "Different description."),
        fixtures::make_listing("4", "Red Widget", {}, "Widgets", "A fine widget."),
    };
    FuzzyDedupResult result = fuzzy_exact_dedup(listings);
    CHECK(result.removed == 1);
    REQUIRE(result.kept.size() == 3);
    CHECK(result.kept[0].id == "1");  // first occurrence survives
    CHECK(result.kept[1].id == "3");  // same title, different description
    CHECK(result.kept[2].id == "4");

    SUBCASE("idempotent") {
        FuzzyDedupResult again = fuzzy_exact_dedup(result.kept);
        CHECK(again.removed == 0);
    }

    SUBCASE("all distinct keys -> nothing removed") {
        std::vector<Listing> distinct = {
            fixtures::make_listing("x", "One", {}),
            fixtures::make_listing("y", "Two", {}),
        };
        CHECK(fuzzy_exact_dedup(distinct).removed == 0);
    }
}
