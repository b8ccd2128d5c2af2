#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxima/lexicon.hpp"
#include "proxima/postings.hpp"

namespace proxima {

// Query subsets by lemma-type mix: Q1 all lemmas inside the fst band, Q2 a
// stop-band lemma next to rarer ones, Q3 all in the w band, Q4 w band plus
// ordinary, Q5 all ordinary. The same labels apply under both schemas, each
// against its own band edges.
enum class QueryClass : uint8_t { Q1, Q2, Q3, Q4, Q5 };

const char* to_string(QueryClass c);

struct QueryLemma {
    std::string text;
    std::optional<LemmaId> id;  // == FL-number; empty for corpus-unknown lemmas

    uint32_t fl() const { return id ? *id : kUnrankedFl; }
};

struct QueryPart {
    uint32_t begin = 0, end = 0;      // [begin,end) word span in the query
    std::vector<QueryLemma> lemmas;   // deduplicated effective lemmas, query order
    QueryClass cls = QueryClass::Q5;
    size_t anchor = 0;                // index into lemmas
    bool anchor_from_nsw = false;     // read the anchor's TRAD_NSW list with NSW
    std::vector<IndexKey> keys;       // WV / FST keys, canonical order
    std::vector<LemmaId> nsw_checks;  // stop-band lemmas verified via the anchor's NSW
    std::vector<QueryLemma> residual; // lemmas checked via plain TRAD lists

    const QueryLemma& anchor_lemma() const { return lemmas[anchor]; }
};

struct QueryPlan {
    std::vector<std::string> words;
    std::vector<QueryPart> parts;
    SchemaConfig cfg;
    bool trad_only = false;
};

// Greedy left-to-right spans of at most max_distance words.
std::vector<std::pair<uint32_t, uint32_t>> split_query(size_t word_count, uint32_t max_distance);

QueryClass classify_part(std::span<const QueryLemma> lemmas, const SchemaConfig& cfg);

// Q1: the most frequent lemma (f of every FST key). Q2: the rarest non-stop
// lemma (its TRAD_NSW list is the one read with NSW). Q3/Q4: the rarest
// lemma admissible as w. Q5: the rarest lemma.
size_t choose_anchor(std::span<const QueryLemma> lemmas, QueryClass cls, const SchemaConfig& cfg);

// Splits, classifies and anchors, without key selection. Shared with the
// scan-based reference search so both sides agree on part semantics.
std::vector<QueryPart> derive_parts(const std::vector<std::string>& words, const Lexicon& lex,
                                    const SchemaConfig& cfg);

// Fills keys / nsw_checks / residual for one derived part.
void build_plan(QueryPart& part, const SchemaConfig& cfg, bool trad_only);

QueryPlan plan_query(const std::string& query, const Lexicon& lex, const SchemaConfig& cfg,
                     bool trad_only = false);

// Stable text form used by --explain and golden tests.
std::string explain(const QueryPlan& plan, const Lexicon& lex);

}  // namespace proxima
