#include <doctest.h>

#include <cmath>

#include "curate/signals.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace curate;

namespace {

WordSequence words_of(std::initializer_list<const char*> list) {
    WordSequence seq;
    for (const char* w : list) {
        seq.words.emplace_back(w);
        seq.char_count += codepoint_count(w);
    }
    return seq;
}

}  // namespace

TEST_CASE("frac_lines_end_with_ellipsis") {
    CHECK(frac_lines_end_with_ellipsis("done\nmore...") == doctest::Approx(0.5));
    CHECK(frac_lines_end_with_ellipsis("a\nb\nc") == 0.0);
    // Trailing whitespace is ignored; U+2026 counts.
    CHECK(frac_lines_end_with_ellipsis("x…\ny…  ") == 1.0);
    CHECK(frac_lines_end_with_ellipsis("") == 0.0);
}

TEST_CASE("frac_no_alph_words") {
    CHECK(frac_no_alph_words(words_of({"hello", "123", "456", "!"})) == doctest::Approx(0.75));
    CHECK(frac_no_alph_words(words_of({"abc"})) == 0.0);
    CHECK(frac_no_alph_words(words_of({"über", "123"})) == doctest::Approx(0.5));
    CHECK(frac_no_alph_words(WordSequence{}) == 0.0);
}

TEST_CASE("lorem_ipsum_ratio") {
    CHECK(lorem_ipsum_ratio(normalize("clean text")) == 0.0);
    CHECK(lorem_ipsum_ratio(normalize("Lorem Ipsum dolor")) == doctest::Approx(1.0 / 17.0));
    CHECK(lorem_ipsum_ratio(normalize("lorem ipsum lorem ipsum")) ==
          doctest::Approx(2.0 / 23.0));
    CHECK(lorem_ipsum_ratio("") == 0.0);
}

TEST_CASE("mean_word_length") {
    CHECK(mean_word_length(words_of({"to", "be", "or"})) == doctest::Approx(2.0));
    CHECK(mean_word_length(WordSequence{}) == 0.0);
    CHECK(mean_word_length(words_of({"abc", "de"})) == doctest::Approx(2.5));
}

TEST_CASE("stop_word_fraction") {
    SignalAssets assets = fixtures::test_assets();
    CHECK(stop_word_fraction(words_of({"the", "cat", "sat"}), assets, "en") ==
          doctest::Approx(1.0 / 3.0));
    CHECK(stop_word_fraction(words_of({"cat", "sat"}), assets, "en") == 0.0);
    CHECK(stop_word_fraction(words_of({"the", "the"}), assets, "en") == 1.0);
    CHECK_THROWS_AS(stop_word_fraction(words_of({"x"}), assets, "xx"), SignalError);
}

TEST_CASE("symbol_to_word_ratio") {
    SignalAssets assets = fixtures::test_assets();
    CHECK(symbol_to_word_ratio(words_of({"wow", "...", "nice", "#", "ok"}), assets) ==
          doctest::Approx(0.4));
    CHECK(symbol_to_word_ratio(words_of({"plain", "words"}), assets) == 0.0);
    CHECK(symbol_to_word_ratio(words_of({"w…", "#tag"}), assets) == doctest::Approx(1.0));
}

TEST_CASE("frac_lines_start_with_bulletpoint") {
    SignalAssets assets = fixtures::test_assets();
    CHECK(frac_lines_start_with_bulletpoint("• a\n• b\ntext", assets) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(frac_lines_start_with_bulletpoint("plain\nlines", assets) == 0.0);
    // en dash is part of the bullet set
    CHECK(frac_lines_start_with_bulletpoint("– dash item", assets) == 1.0);
    // leading whitespace is skipped
    CHECK(frac_lines_start_with_bulletpoint("   ■ square", assets) == 1.0);
}

TEST_CASE("frac_chars_dupe_ngrams") {
    WordSequence six = words_of({"to", "be", "or", "not", "to", "be"});
    CHECK(frac_chars_dupe_ngrams(six, 2) == doctest::Approx(8.0 / 13.0));
    CHECK(frac_chars_dupe_ngrams(words_of({"a", "b", "c", "d"}), 2) == 0.0);
    CHECK(frac_chars_dupe_ngrams(words_of({"a", "b", "a", "b", "a", "b"}), 2) == 1.0);
    // Shorter than n
    CHECK(frac_chars_dupe_ngrams(words_of({"a", "b"}), 5) == 0.0);
}

TEST_CASE("frac_chars_top_ngram") {
    WordSequence six = words_of({"to", "be", "or", "not", "to", "be"});
    CHECK(frac_chars_top_ngram(six, 2) == doctest::Approx(8.0 / 13.0));
    // All 2-grams unique: earliest wins.
    CHECK(frac_chars_top_ngram(words_of({"a", "b", "c"}), 2) == doctest::Approx(2.0 / 3.0));
    // Overlapping repeats cap at 1.
    CHECK(frac_chars_top_ngram(words_of({"x", "x", "x", "x"}), 2) == 1.0);
}

TEST_CASE("ldnoobw_count") {
    SignalAssets assets = fixtures::test_assets();
    CHECK(ldnoobw_count(words_of({"clean", "text", "here"}), assets, "en") == 0);
    CHECK(ldnoobw_count(words_of({"some", "badword", "here"}), assets, "en") == 1);
    CHECK(ldnoobw_count(words_of({"badword", "x", "badword", "y", "badword"}), assets, "en") ==
          3);
    // Longest match first: "bad phrase" counts once, not as two words.
    CHECK(ldnoobw_count(words_of({"bad", "phrase"}), assets, "en") == 1);
    CHECK_THROWS_AS(ldnoobw_count(words_of({"x"}), assets, "zz"), SignalError);
}

TEST_CASE("check_ut1_blacklist") {
    SignalAssets assets = fixtures::test_assets();
    CHECK(check_ut1_blacklist("http://ads.evil.example/banner", assets));
    CHECK(check_ut1_blacklist("https://EVIL.example", assets));
    CHECK(!check_ut1_blacklist("http://good.example/page", assets));
    // Suffix matching is on domain labels, not substrings.
    CHECK(!check_ut1_blacklist("http://notevil.example", assets));
    bool warned = false;
    CHECK(!check_ut1_blacklist("not a url at all", assets, &warned));
    CHECK(warned);
    CHECK(!check_ut1_blacklist("", assets, &warned));
    CHECK(!warned);
}

TEST_CASE("compute_signals on the empty document") {
    SignalAssets assets = fixtures::test_assets();
    Document doc = fixtures::make_doc("empty", "");
    QualitySignals s = compute_signals(doc, assets);
    CHECK(s.word_count == 0);
    CHECK(s.mean_word_length == 0.0);
    CHECK(s.stop_word_fraction == 0.0);
    CHECK(s.frac_no_alph_words == 0.0);
    CHECK(s.lorem_ipsum_ratio == 0.0);
    for (const auto& [n, v] : s.frac_chars_dupe_ngrams) CHECK(v == 0.0);
    for (const auto& [n, v] : s.frac_chars_top_ngram) CHECK(v == 0.0);
}

TEST_CASE("compute_signals matches the per-op values on the six word fixture") {
    SignalAssets assets = fixtures::test_assets();
    Document doc = fixtures::make_doc("six", "to be or not to be");
    QualitySignals s = compute_signals(doc, assets);
    CHECK(s.word_count == 6);
    CHECK(s.mean_word_length == doctest::Approx(13.0 / 6.0));
    CHECK(s.frac_chars_top_ngram.at(2) == doctest::Approx(8.0 / 13.0));
    CHECK(s.ccnet_length == 18);
    CHECK(s.stop_word_fraction == doctest::Approx(2.0 / 6.0));  // "to" is a stopword
}

TEST_CASE("compute_signals uses provided ccnet metadata") {
    SignalAssets assets = fixtures::test_assets();
    Document doc = fixtures::make_doc("meta", "short text");
    doc.ccnet_length = 4242;
    doc.ccnet_language_score = 0.42;
    QualitySignals s = compute_signals(doc, assets);
    CHECK(s.ccnet_length == 4242);
    CHECK(s.ccnet_language_score == 0.42);

    Document no_meta = fixtures::make_doc("nometa", "short text");
    CHECK(compute_signals(no_meta, assets).ccnet_length == 10);
}

TEST_CASE("compute_signals agrees with independent per-op invocation") {
    SignalAssets assets = fixtures::test_assets();
    Rng rng(2024);
    for (int i = 0; i < 50; ++i) {
        Document doc = fixtures::make_doc("d" + std::to_string(i),
                                          fixtures::random_document_text(rng));
        QualitySignals s = compute_signals(doc, assets);
        std::string norm = normalize(doc.text);
        WordSequence words = tokenize_normalized(norm);
        CHECK(s.frac_lines_end_with_ellipsis == frac_lines_end_with_ellipsis(doc.text));
        CHECK(s.frac_no_alph_words == frac_no_alph_words(words));
        CHECK(s.lorem_ipsum_ratio == lorem_ipsum_ratio(norm));
        CHECK(s.mean_word_length == mean_word_length(words));
        CHECK(s.stop_word_fraction == stop_word_fraction(words, assets, "en"));
        CHECK(s.symbol_to_word_ratio == symbol_to_word_ratio(words, assets));
        CHECK(s.word_count == words.size());
        for (int n = 5; n <= 10; ++n) {
            CHECK(s.frac_chars_dupe_ngrams.at(n) == frac_chars_dupe_ngrams(words, n));
        }
        for (int n = 2; n <= 4; ++n) {
            CHECK(s.frac_chars_top_ngram.at(n) == frac_chars_top_ngram(words, n));
        }
        CHECK(s.ldnoobw_word_count == ldnoobw_count(words, assets, "en"));
    }
}

TEST_CASE("signals match brute-force oracles on random documents") {
    SignalAssets assets = fixtures::test_assets();
    std::set<std::string> oracle_stops(assets.stopwords.at("en").begin(),
                                       assets.stopwords.at("en").end());
    const auto& phrases = assets.ldnoobw_phrases.at("en");

    Rng rng(31337);
    for (int i = 0; i < 100; ++i) {
        std::string text = fixtures::random_document_text(rng);
        Document doc = fixtures::make_doc("o" + std::to_string(i), text);
        QualitySignals s = compute_signals(doc, assets);
        std::string norm = normalize(text);
        std::vector<std::string> words = tokenize_normalized(norm).words;

        CHECK(s.frac_lines_end_with_ellipsis ==
              doctest::Approx(oracle::frac_lines_end_with_ellipsis(text)).epsilon(1e-12));
        CHECK(s.frac_no_alph_words ==
              doctest::Approx(oracle::frac_no_alph_words(words)).epsilon(1e-12));
        CHECK(s.lorem_ipsum_ratio ==
              doctest::Approx(oracle::lorem_ipsum_ratio(norm)).epsilon(1e-12));
        CHECK(s.mean_word_length ==
              doctest::Approx(oracle::mean_word_length(words)).epsilon(1e-12));
        CHECK(s.stop_word_fraction ==
              doctest::Approx(oracle::stop_word_fraction(words, oracle_stops)).epsilon(1e-12));
        CHECK(s.symbol_to_word_ratio ==
              doctest::Approx(oracle::symbol_to_word_ratio(words)).epsilon(1e-12));
        CHECK(s.frac_lines_start_with_bulletpoint ==
              doctest::Approx(oracle::frac_lines_start_with_bulletpoint(text)).epsilon(1e-12));
        for (int n = 5; n <= 10; ++n) {
            CHECK(s.frac_chars_dupe_ngrams.at(n) ==
                  doctest::Approx(oracle::frac_chars_dupe_ngrams(words, n)).epsilon(1e-12));
        }
        for (int n = 2; n <= 4; ++n) {
            CHECK(s.frac_chars_top_ngram.at(n) ==
                  doctest::Approx(oracle::frac_chars_top_ngram(words, n)).epsilon(1e-12));
        }
        CHECK(s.ldnoobw_word_count == oracle::ldnoobw_count(words, phrases));
    }
}

TEST_CASE("signal json record carries every named signal") {
    SignalAssets assets = fixtures::test_assets();
    Document doc = fixtures::make_doc("rec", "to be or not to be");
    nlohmann::json j = compute_signals(doc, assets).to_json(doc.id);
    CHECK(j["id"] == "rec");
    for (const auto& name : signal_names()) CHECK(j.contains(name));
}
