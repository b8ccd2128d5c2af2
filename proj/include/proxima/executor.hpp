#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "proxima/planner.hpp"
#include "proxima/store.hpp"

namespace proxima {

// doc ordinal -> sorted anchor positions satisfying the part's predicate
using PartMatches = std::map<uint32_t, std::vector<uint32_t>>;

struct SearchResult {
    std::vector<PartMatches> parts;
    ReadStats stats;

    std::vector<uint32_t> docs() const;  // union over parts, ascending
    bool empty() const;
};

// Document-at-a-time evaluation. Every referenced posting list is read in
// full; NSW streams are fetched only when the plan verifies through them.
// Planned keys absent from the store contribute empty lists.
SearchResult execute(const QueryPlan& plan, const IndexStore& store);

// Index-free reference search: same split/class/anchor derivation, matching
// done by scanning the documents. Used to cross-check execute().
SearchResult oracle_search(const std::string& query, const std::vector<Document>& corpus,
                           const Lexicon& lex, const SchemaConfig& cfg);
SearchResult oracle_search_tapes(const std::string& query, const std::vector<DocTape>& tapes,
                                 const Lexicon& lex, const SchemaConfig& cfg);

// Distance-free fallback: documents containing every (deduplicated) query
// lemma anywhere. A superset of the proximity matches of single-part queries.
std::vector<uint32_t> doc_level_search(const std::string& query, const IndexStore& store,
                                       ReadStats* stats = nullptr);

}  // namespace proxima
