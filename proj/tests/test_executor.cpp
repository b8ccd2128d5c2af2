#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "proxima/analyzer.hpp"
#include "proxima/builder.hpp"
#include "proxima/executor.hpp"
#include "helpers.hpp"

using namespace proxima;
using proxima::testing::TempDir;

namespace {

struct Fixture {
    TempDir tmp;
    std::vector<Document> corpus;
    SchemaConfig cfg;

    Fixture(std::string tag, Lexicon lex, SchemaConfig cfg_, std::vector<Document> docs)
        : tmp(std::move(tag)), corpus(std::move(docs)), cfg(cfg_) {
        auto builder = IndexBuilder::with_lexicon(std::move(lex), cfg);
        for (const auto& doc : corpus) builder.add_document(doc);
        builder.commit_to(tmp.path / "idx");
    }

    IndexStore open() const { return IndexStore::open(tmp.path / "idx"); }
};

bool same_matches(const SearchResult& a, const SearchResult& b) {
    if (a.parts.size() != b.parts.size()) return false;
    for (size_t i = 0; i < a.parts.size(); ++i) {
        if (!(a.parts[i] == b.parts[i])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("two frequently-used lemmas match within the window") {
    auto lex = proxima::testing::ranked_lexicon({"a", "b", "x", "y", "z"});
    SchemaConfig cfg;
    cfg.sw_count = 0;
    cfg.fu_count = 100;  // every lemma sits in the w band
    cfg.max_distance = 2;

    Fixture fx("exec_pairs", lex, cfg, {{"d0", "x a y b z"}});
    auto store = fx.open();

    auto plan = plan_query("a b", store.lexicon(), store.schema());
    REQUIRE(plan.parts.size() == 1);
    CHECK(plan.parts[0].cls == QueryClass::Q3);

    auto result = execute(plan, store);
    REQUIRE(result.parts[0].size() == 1);
    // anchor is b (higher fl); |3-1| = 2 <= 2
    CHECK(result.parts[0].at(0) == std::vector<uint32_t>{3});

    auto oracle = oracle_search("a b", fx.corpus, store.lexicon(), store.schema());
    CHECK(same_matches(result, oracle));
}

TEST_CASE("the same query misses once the gap exceeds the window") {
    auto lex = proxima::testing::ranked_lexicon({"a", "b", "x", "y", "z"});
    SchemaConfig cfg;
    cfg.sw_count = 0;
    cfg.fu_count = 100;
    cfg.max_distance = 2;

    // a and b sit 3 apart; the two-word query stays one part at distance 2
    Fixture fx("exec_pairs_miss", lex, cfg, {{"d0", "x a y y b"}});
    auto store = fx.open();
    auto plan = plan_query("a b", store.lexicon(), store.schema());
    REQUIRE(plan.parts.size() == 1);
    auto result = execute(plan, store);
    CHECK(result.empty());
    auto oracle = oracle_search("a b", fx.corpus, store.lexicon(), store.schema());
    CHECK(oracle.parts[0].empty());
}

TEST_CASE("queries wider than the window split and combine by union") {
    auto lex = proxima::testing::ranked_lexicon({"a", "b", "x", "y", "z"});
    SchemaConfig cfg;
    cfg.sw_count = 0;
    cfg.fu_count = 100;
    cfg.max_distance = 1;

    Fixture fx("exec_split_union", lex, cfg, {{"d0", "x a y b z"}});
    auto store = fx.open();
    // two words at distance 1: two single-word parts, each matching on its own
    auto plan = plan_query("a b", store.lexicon(), store.schema());
    REQUIRE(plan.parts.size() == 2);
    auto result = execute(plan, store);
    CHECK(result.parts[0].at(0) == std::vector<uint32_t>{1});
    CHECK(result.parts[1].at(0) == std::vector<uint32_t>{3});
    CHECK(result.docs() == std::vector<uint32_t>{0});
    auto oracle = oracle_search("a b", fx.corpus, store.lexicon(), store.schema());
    CHECK(same_matches(result, oracle));
}

TEST_CASE("empty queries produce empty plans and results") {
    auto lex = proxima::testing::ranked_lexicon({"a"});
    SchemaConfig cfg;
    Fixture fx("exec_empty", lex, cfg, {{"d0", "a"}});
    auto store = fx.open();
    auto plan = plan_query("", store.lexicon(), store.schema());
    CHECK(plan.parts.empty());
    auto result = execute(plan, store);
    CHECK(result.empty());
    CHECK(result.docs().empty());
}

TEST_CASE("Q2 verifies stop lemmas strictly through NSW records") {
    auto lex = proxima::testing::pinned_lexicon(10, {{"of", 0}, {"rare", 9}});
    SchemaConfig cfg;
    cfg.sw_count = 1;
    cfg.fu_count = 2;
    cfg.max_distance = 5;

    Fixture fx("exec_nsw", lex, cfg,
               {{"far", "of x00003 x00003 x00003 x00003 x00003 rare"},
                {"near", "of x00003 rare"}});
    auto store = fx.open();

    auto plan = plan_query("of rare", store.lexicon(), store.schema());
    REQUIRE(plan.parts.size() == 1);
    CHECK(plan.parts[0].cls == QueryClass::Q2);
    CHECK(plan.parts[0].anchor_from_nsw);

    auto result = execute(plan, store);
    // the 6-words-away document has no "of" entry in the anchor's NSW record
    REQUIRE(result.parts[0].size() == 1);
    CHECK(result.parts[0].count(1) == 1);
    CHECK(result.parts[0].at(1) == std::vector<uint32_t>{2});

    auto oracle = oracle_search("of rare", fx.corpus, store.lexicon(), store.schema());
    CHECK(same_matches(result, oracle));

    // doc-level fallback sees both documents; proximity matches are a subset
    auto docs = doc_level_search("of rare", store);
    CHECK(docs == std::vector<uint32_t>{0, 1});
}

TEST_CASE("missing planned keys read as empty lists") {
    auto lex = proxima::testing::ranked_lexicon({"a", "b", "c"});
    SchemaConfig cfg;
    cfg.sw_count = 0;
    cfg.fu_count = 100;
    cfg.max_distance = 5;
    Fixture fx("exec_missing", lex, cfg, {{"d0", "a c"}});
    auto store = fx.open();
    // "a b": the wv(a,b) key was never built because b never occurs
    auto result = execute(plan_query("a b", store.lexicon(), store.schema()), store);
    CHECK(result.empty());
}

TEST_CASE("queries with corpus-unknown lemmas match nothing") {
    auto lex = proxima::testing::ranked_lexicon({"a"});
    SchemaConfig cfg;
    Fixture fx("exec_unknown", lex, cfg, {{"d0", "a"}});
    auto store = fx.open();
    auto result = execute(plan_query("a zzgloborp", store.lexicon(), store.schema()), store);
    CHECK(result.empty());
    auto oracle = oracle_search("a zzgloborp", fx.corpus, store.lexicon(), store.schema());
    CHECK(same_matches(result, oracle));
}

TEST_CASE("single-lemma queries return every occurrence") {
    auto lex = proxima::testing::ranked_lexicon({"a", "b"});
    SchemaConfig cfg;
    cfg.sw_count = 1;
    Fixture fx("exec_single", lex, cfg, {{"d0", "a b a"}, {"d1", "b"}});
    auto store = fx.open();
    auto result = execute(plan_query("a", store.lexicon(), store.schema()), store);
    REQUIRE(result.parts.size() == 1);
    CHECK(result.parts[0].at(0) == std::vector<uint32_t>{0, 2});
    CHECK(result.parts[0].count(1) == 0);
}

TEST_CASE("read accounting: Q5 never touches NSW bytes, Q1 stays on fst streams") {
    GenParams params;
    params.seed = 12;
    params.vocab_size = 100;
    params.doc_count = 40;
    params.doc_len_min = 50;
    params.doc_len_max = 120;
    auto corpus = gen_corpus(params);

    SchemaConfig cfg;
    cfg.sw_count = 10;
    cfg.fu_count = 20;
    cfg.max_distance = 5;

    TempDir tmp("exec_accounting");
    build_all(corpus, Dictionary{}, cfg, tmp.path / "idx");
    auto store = IndexStore::open(tmp.path / "idx");

    auto lemma_at = [&](uint32_t fl) { return store.lexicon().fl.lemma(fl); };

    SUBCASE("Q5") {
        auto plan = plan_query(lemma_at(40) + " " + lemma_at(55), store.lexicon(), store.schema());
        REQUIRE(plan.parts[0].cls == QueryClass::Q5);
        auto result = execute(plan, store);
        CHECK(result.stats.nsw_bytes_read == 0);
        CHECK(result.stats.of(Family::TradNsw).bytes_read == 0);
        CHECK(result.stats.of(Family::Wv).bytes_read == 0);
        CHECK(result.stats.of(Family::Fst).bytes_read == 0);
        CHECK(result.stats.of(Family::Trad).bytes_read > 0);
    }
    SUBCASE("Q1 with three stop lemmas") {
        auto plan = plan_query(lemma_at(1) + " " + lemma_at(2) + " " + lemma_at(3),
                               store.lexicon(), store.schema());
        REQUIRE(plan.parts[0].cls == QueryClass::Q1);
        REQUIRE(plan.parts[0].keys.size() == 1);
        auto result = execute(plan, store);
        CHECK(result.stats.of(Family::Fst).bytes_read > 0);
        CHECK(result.stats.of(Family::Trad).bytes_read == 0);
        CHECK(result.stats.of(Family::TradNsw).bytes_read == 0);
        CHECK(result.stats.of(Family::Wv).bytes_read == 0);
        CHECK(result.stats.nsw_bytes_read == 0);
    }
    SUBCASE("Q2 reads the anchor NSW stream but no stop trad lists") {
        auto plan = plan_query(lemma_at(1) + " " + lemma_at(50), store.lexicon(), store.schema());
        REQUIRE(plan.parts[0].cls == QueryClass::Q2);
        auto result = execute(plan, store);
        CHECK(result.stats.of(Family::TradNsw).bytes_read > 0);
        CHECK(result.stats.nsw_bytes_read > 0);
        CHECK(result.stats.of(Family::Trad).bytes_read == 0);
    }
}

TEST_CASE("traditional-list evaluation returns identical matches") {
    GenParams params;
    params.seed = 31;
    params.vocab_size = 120;
    params.doc_count = 60;
    params.doc_len_min = 40;
    params.doc_len_max = 100;
    auto corpus = gen_corpus(params);

    SchemaConfig cfg;
    cfg.sw_count = 10;
    cfg.fu_count = 25;
    cfg.max_distance = 5;

    TempDir tmp("exec_tradonly");
    build_all(corpus, Dictionary{}, cfg, tmp.path / "idx");
    auto store = IndexStore::open(tmp.path / "idx");

    std::mt19937 rng(4);
    auto random_query = [&](uint32_t lo, uint32_t hi, int n) {
        std::string q;
        std::uniform_int_distribution<uint32_t> pick(lo, hi);
        for (int i = 0; i < n; ++i) {
            if (i) q += ' ';
            q += gen_token(pick(rng) + 1, params.vocab_size);
        }
        return q;
    };

    for (int it = 0; it < 40; ++it) {
        std::string query;
        switch (it % 4) {
            case 0: query = random_query(0, 9, 2 + it % 3); break;    // stop band
            case 1: query = random_query(0, 60, 3); break;            // mixed
            case 2: query = random_query(10, 34, 2); break;           // fu band
            default: query = random_query(35, 90, 3); break;          // ordinary
        }
        auto prox = execute(plan_query(query, store.lexicon(), store.schema()), store);
        auto trad = execute(plan_query(query, store.lexicon(), store.schema(), true), store);
        CHECK(same_matches(prox, trad));
        CHECK(trad.stats.of(Family::Wv).bytes_read == 0);
        CHECK(trad.stats.of(Family::Fst).bytes_read == 0);
        CHECK(trad.stats.nsw_bytes_read == 0);
    }
}

TEST_CASE("executor equals the scan-based search on generated corpora") {
    GenParams params;
    params.seed = 77;
    params.vocab_size = 150;
    params.doc_count = 80;
    params.doc_len_min = 30;
    params.doc_len_max = 120;
    auto corpus = gen_corpus(params);
    Dictionary dict;

    for (auto kind : {SchemaKind::Original, SchemaKind::New}) {
        for (uint32_t D : {3u, 5u}) {
            SchemaConfig cfg;
            cfg.kind = kind;
            cfg.max_distance = D;
            cfg.sw_count = 12;
            cfg.fu_count = 30;
            cfg.ehf_count = 5;
            cfg.hf_count = 7;

            TempDir tmp("exec_oracle");
            build_all(corpus, dict, cfg, tmp.path / "idx");
            auto store = IndexStore::open(tmp.path / "idx");

            std::vector<DocTape> tapes;
            for (const auto& doc : corpus) tapes.push_back(make_tape(doc.text, store.lexicon()));

            std::mt19937 rng(kind == SchemaKind::Original ? 100 + D : 200 + D);
            std::uniform_int_distribution<uint32_t> any(0, 120);
            for (int it = 0; it < 30; ++it) {
                int words = 2 + static_cast<int>(rng() % 6);  // some split into parts
                std::string query;
                for (int w = 0; w < words; ++w) {
                    if (w) query += ' ';
                    query += gen_token(any(rng) + 1, params.vocab_size);
                }
                auto plan = plan_query(query, store.lexicon(), store.schema());
                auto got = execute(plan, store);
                auto want = oracle_search_tapes(query, tapes, store.lexicon(), store.schema());
                REQUIRE(got.parts.size() == want.parts.size());
                for (size_t p = 0; p < got.parts.size(); ++p) CHECK(got.parts[p] == want.parts[p]);
            }
        }
    }
}

TEST_CASE("matches at distance five are a subset of distance nine") {
    GenParams params;
    params.seed = 55;
    params.vocab_size = 100;
    params.doc_count = 50;
    params.doc_len_min = 30;
    params.doc_len_max = 80;
    auto corpus = gen_corpus(params);
    Dictionary dict;

    SchemaConfig cfg5;
    cfg5.sw_count = 10;
    cfg5.fu_count = 20;
    cfg5.max_distance = 5;
    SchemaConfig cfg9 = cfg5;
    cfg9.max_distance = 9;

    TempDir tmp("exec_monotonic");
    build_all(corpus, dict, cfg5, tmp.path / "d5");
    build_all(corpus, dict, cfg9, tmp.path / "d9");
    auto s5 = IndexStore::open(tmp.path / "d5");
    auto s9 = IndexStore::open(tmp.path / "d9");

    std::mt19937 rng(8);
    std::uniform_int_distribution<uint32_t> any(0, 80);
    for (int it = 0; it < 25; ++it) {
        std::string query = gen_token(any(rng) + 1, 100);
        query += ' ';
        query += gen_token(any(rng) + 1, 100);
        auto m5 = execute(plan_query(query, s5.lexicon(), s5.schema()), s5).docs();
        auto m9 = execute(plan_query(query, s9.lexicon(), s9.schema()), s9).docs();
        CHECK(std::includes(m9.begin(), m9.end(), m5.begin(), m5.end()));
    }

    // index growth goes the same direction
    CHECK(s9.stats().of(Family::Wv).byte_size >= s5.stats().of(Family::Wv).byte_size);
    CHECK(s9.stats().of(Family::Fst).byte_size >= s5.stats().of(Family::Fst).byte_size);
}

TEST_CASE("doc-level search is a superset of proximity matches") {
    GenParams params;
    params.seed = 14;
    params.vocab_size = 80;
    params.doc_count = 60;
    params.doc_len_min = 30;
    params.doc_len_max = 90;
    auto corpus = gen_corpus(params);

    SchemaConfig cfg;
    cfg.sw_count = 8;
    cfg.fu_count = 16;
    cfg.max_distance = 3;

    TempDir tmp("exec_doclevel");
    build_all(corpus, Dictionary{}, cfg, tmp.path / "idx");
    auto store = IndexStore::open(tmp.path / "idx");

    std::mt19937 rng(2);
    std::uniform_int_distribution<uint32_t> any(0, 70);
    for (int it = 0; it < 30; ++it) {
        std::string query = gen_token(any(rng) + 1, 80);
        query += ' ';
        query += gen_token(any(rng) + 1, 80);
        auto prox = execute(plan_query(query, store.lexicon(), store.schema()), store).docs();
        auto doc_level = doc_level_search(query, store);
        CHECK(std::includes(doc_level.begin(), doc_level.end(), prox.begin(), prox.end()));
    }
    CHECK(doc_level_search("", store).empty());
}
