#include <doctest.h>

#include "curate/text.hpp"
#include "curate/util.hpp"
#include "support/fixtures.hpp"

using namespace curate;

TEST_CASE("normalize basics") {
    CHECK(normalize("") == "");
    CHECK(normalize("  Hello   WORLD ") == "hello world");
    // Fullwidth forms fold to ASCII under NFKC.
    CHECK(normalize("Ｈｅｌｌｏ") == "hello");
    CHECK(normalize("Tabs\tand\nnewlines") == "tabs and newlines");
}

TEST_CASE("normalize composes decomposed sequences") {
    // u + combining diaeresis -> precomposed u-umlaut
    CHECK(normalize("über") == "über");
    // ligature fi decomposes
    CHECK(normalize("efﬁcient") == "efficient");
}

TEST_CASE("normalize is idempotent") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        std::string text = fixtures::random_document_text(rng, 40);
        std::string once = normalize(text);
        CHECK(normalize(once) == once);
    }
    // A few adversarial cases: fullwidth, ligatures, combining marks, case
    // oddities.
    for (const char* s : {"Ｈéllo", "ﬁﬂ", "İstanbul",
                          "ẞ-Straße", "Ύ", "Å"}) {
        std::string once = normalize(s);
        CHECK(normalize(once) == once);
    }
}

TEST_CASE("tokenize_words") {
    WordSequence empty = tokenize_words("");
    CHECK(empty.words.empty());
    CHECK(empty.char_count == 0);

    WordSequence six = tokenize_words("to be or not to be");
    CHECK(six.words == std::vector<std::string>{"to", "be", "or", "not", "to", "be"});
    CHECK(six.char_count == 13);

    WordSequence collapsed = tokenize_words("a  b");
    CHECK(collapsed.words == std::vector<std::string>{"a", "b"});
    CHECK(collapsed.char_count == 2);
}

TEST_CASE("tokenize_words counts codepoints not bytes") {
    WordSequence seq = tokenize_words("über café");
    CHECK(seq.words.size() == 2);
    CHECK(seq.char_count == 8);
}

TEST_CASE("char_count plus separators equals normalized length") {
    Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        std::string text = fixtures::random_document_text(rng, 50);
        std::string norm = normalize(text);
        WordSequence seq = tokenize_normalized(norm);
        std::size_t spaces = seq.words.empty() ? 0 : seq.words.size() - 1;
        CHECK(seq.char_count + spaces == codepoint_count(norm));
    }
}

TEST_CASE("split_lines") {
    auto lines = split_lines("a\nb\n");
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "a");
    CHECK(lines[1] == "b");

    auto interior = split_lines("a\n\nb");
    REQUIRE(interior.size() == 3);
    CHECK(interior[1] == "");

    auto single = split_lines("single");
    REQUIRE(single.size() == 1);
    CHECK(single[0] == "single");

    CHECK(split_lines("").empty());
}

TEST_CASE("split_lines never yields embedded newlines") {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        std::string text = fixtures::random_document_text(rng, 50);
        for (auto line : split_lines(text)) {
            CHECK(line.find('\n') == std::string_view::npos);
        }
    }
}

TEST_CASE("utf8 round trip") {
    std::string s = "café • 你好 \U0001F600";
    CHECK(utf8_encode(utf8_decode(s)) == s);
    CHECK(codepoint_count(s) == 11);
}

TEST_CASE("is_alpha covers non-ascii letters") {
    CHECK(is_alpha(U'a'));
    CHECK(is_alpha(U'ü'));
    CHECK(is_alpha(U'你'));
    CHECK(!is_alpha(U'1'));
    CHECK(!is_alpha(U'#'));
    CHECK(!is_alpha(U'•'));
}
