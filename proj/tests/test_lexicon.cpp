#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "proxima/analyzer.hpp"
#include "proxima/errors.hpp"
#include "proxima/lexicon.hpp"
#include "helpers.hpp"

using namespace proxima;

namespace {

Dictionary small_dict() {
    Dictionary d;
    d.add("mine", {"mine", "my"});
    d.add("be", {"be"});
    d.add("is", {"be"});
    d.add("kids", {"kid"});
    return d;
}

}  // namespace

TEST_CASE("tokenize splits on non-alphanumeric and folds case") {
    CHECK(tokenize("To be, or NOT to be!") ==
          std::vector<std::string>{"to", "be", "or", "not", "to", "be"});
    CHECK(tokenize("a1-b2_c3") == std::vector<std::string>{"a1", "b2", "c3"});
    CHECK(tokenize("   ") == std::vector<std::string>{});
}

TEST_CASE("lemmatize uses the dictionary and self-lemmatizes unknown words") {
    auto dict = small_dict();
    CHECK(lemmatize("mine", dict) == std::vector<std::string>{"mine", "my"});
    CHECK(lemmatize("be", dict) == std::vector<std::string>{"be"});
    CHECK(lemmatize("zxqv", dict) == std::vector<std::string>{"zxqv"});
}

TEST_CASE("build_fl_list counts and ranks") {
    Dictionary dict;
    SUBCASE("direct counting") {
        std::vector<Document> corpus{{"d0", "a b a c a b"}};
        auto fl = build_fl_list(corpus, dict);
        REQUIRE(fl.size() == 3);
        CHECK(fl.lemma(0) == "a");
        CHECK(fl.lemma(1) == "b");
        CHECK(fl.lemma(2) == "c");
        CHECK(fl.frequency(0) == 3);
        CHECK(fl.frequency(1) == 2);
        CHECK(fl.frequency(2) == 1);
    }
    SUBCASE("ties break by ascending lemma string") {
        std::vector<Document> corpus{{"d0", "b a a b"}};
        auto fl = build_fl_list(corpus, dict);
        REQUIRE(fl.size() == 2);
        CHECK(fl.lemma(0) == "a");
        CHECK(fl.lemma(1) == "b");
    }
    SUBCASE("empty corpus gives an empty list") {
        auto fl = build_fl_list({}, dict);
        CHECK(fl.size() == 0);
    }
    SUBCASE("multi-lemma words count once per lemma") {
        auto dict2 = small_dict();
        std::vector<Document> corpus{{"d0", "mine cave"}};
        auto fl = build_fl_list(corpus, dict2);
        REQUIRE(fl.size() == 3);  // mine, my, cave
        CHECK(fl.find("mine").has_value());
        CHECK(fl.find("my").has_value());
        CHECK(fl.find("cave").has_value());
        uint64_t total = 0;
        for (uint32_t i = 0; i < fl.size(); ++i) total += fl.frequency(i);
        CHECK(total >= 2);  // lemma occurrences >= token count
    }
}

TEST_CASE("build_fl_list is order-independent and frequencies non-increasing") {
    GenParams params;
    params.seed = 7;
    params.vocab_size = 80;
    params.doc_count = 30;
    params.doc_len_min = 20;
    params.doc_len_max = 60;
    auto corpus = gen_corpus(params);
    Dictionary dict;

    auto fl = build_fl_list(corpus, dict);
    for (uint32_t i = 1; i < fl.size(); ++i) CHECK(fl.frequency(i - 1) >= fl.frequency(i));

    auto shuffled = corpus;
    std::mt19937 rng(3);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto fl2 = build_fl_list(shuffled, dict);
    REQUIRE(fl.size() == fl2.size());
    for (uint32_t i = 0; i < fl.size(); ++i) {
        CHECK(fl.lemma(i) == fl2.lemma(i));
        CHECK(fl.frequency(i) == fl2.frequency(i));
    }
}

TEST_CASE("lemma_type under the original schema") {
    SchemaConfig cfg;  // SWCount 500, FUCount 1050
    CHECK(lemma_type(309, cfg) == LemmaType::Stop);   // "earth"
    CHECK(lemma_type(921, cfg) == LemmaType::FrequentlyUsed);  // "graphics"
    CHECK(lemma_type(15873, cfg) == LemmaType::Ordinary);      // "undersea"
    CHECK(lemma_type(499, cfg) == LemmaType::Stop);
    CHECK(lemma_type(500, cfg) == LemmaType::FrequentlyUsed);
    CHECK(lemma_type(1549, cfg) == LemmaType::FrequentlyUsed);
    CHECK(lemma_type(1550, cfg) == LemmaType::Ordinary);
    CHECK(lemma_type(kUnrankedFl, cfg) == LemmaType::Ordinary);
}

TEST_CASE("lemma_type under the new schema") {
    SchemaConfig cfg;
    cfg.kind = SchemaKind::New;  // EHF 100, HF 400, FU 1050
    CHECK(lemma_type(99, cfg) == LemmaType::ExtremeHighFreq);
    CHECK(lemma_type(100, cfg) == LemmaType::HighFreq);
    CHECK(lemma_type(499, cfg) == LemmaType::HighFreq);
    CHECK(lemma_type(500, cfg) == LemmaType::FrequentlyUsed);
    CHECK(lemma_type(1549, cfg) == LemmaType::FrequentlyUsed);
    CHECK(lemma_type(1550, cfg) == LemmaType::Ordinary);
}

TEST_CASE("every fl maps to exactly one type per schema") {
    for (auto kind : {SchemaKind::Original, SchemaKind::New}) {
        SchemaConfig cfg;
        cfg.kind = kind;
        LemmaType prev = lemma_type(0, cfg);
        int transitions = 0;
        for (uint32_t fl = 1; fl < 3000; ++fl) {
            LemmaType t = lemma_type(fl, cfg);
            if (t != prev) {
                ++transitions;
                prev = t;
            }
        }
        // Half-open bands partition the range: Original has 2 boundaries,
        // New has 3, and types never repeat after a transition.
        CHECK(transitions == (kind == SchemaKind::Original ? 2 : 3));
        CHECK(lemma_type(1u << 30, cfg) == LemmaType::Ordinary);
    }
}

TEST_CASE("fl list round-trips through its text form") {
    auto lex = proxima::testing::ranked_lexicon({"alpha", "beta", "gamma"});
    std::stringstream ss;
    lex.fl.save(ss);
    auto loaded = FlList::load(ss);
    REQUIRE(loaded.size() == 3);
    CHECK(loaded.lemma(0) == "alpha");
    CHECK(loaded.frequency(0) == 3);
    CHECK(loaded.find("gamma") == LemmaId{2});
    CHECK(!loaded.find("delta").has_value());
}

TEST_CASE("interning appends at the tail without moving ranks") {
    auto lex = proxima::testing::ranked_lexicon({"alpha", "beta"});
    auto ids = lex.intern("newword");
    REQUIRE(ids.size() == 1);
    CHECK(ids[0] == 2);
    CHECK(lex.fl.find("alpha") == LemmaId{0});
    CHECK(lex.fl.size() == 3);
}

TEST_CASE("a directory of text files loads as a corpus") {
    proxima::testing::TempDir tmp("corpus_dir");
    std::ofstream(tmp.path / "beta.txt") << "second document";
    std::ofstream(tmp.path / "alpha.txt") << "first document";
    auto docs = load_corpus(tmp.path);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].id == "alpha.txt");  // sorted by id for determinism
    CHECK(docs[0].text == "first document");
    CHECK(docs[1].id == "beta.txt");
    CHECK_THROWS_AS(load_corpus(tmp.path / "gone"), IoError);
}

TEST_CASE("dictionary save/parse round-trip") {
    auto dict = small_dict();
    std::stringstream ss;
    dict.save(ss);
    auto loaded = Dictionary::parse(ss);
    CHECK(loaded.size() == dict.size());
    REQUIRE(loaded.find("mine"));
    CHECK(*loaded.find("mine") == std::vector<std::string>{"mine", "my"});
}
