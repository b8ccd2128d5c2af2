#pragma once

#include <cstdint>
#include <string>

namespace proxima {

// A lemma's id equals its FL-number: its 0-based rank in the frequency-sorted
// lemma list of the index it belongs to. Lower id = more frequent lemma.
using LemmaId = uint32_t;

// Rank assigned to lemmas that never occur in the indexed corpus. Any value
// at or above the lexicon size classifies as Ordinary under every schema.
inline constexpr uint32_t kUnrankedFl = UINT32_MAX;

enum class SchemaKind : uint8_t { Original, New };

enum class LemmaType : uint8_t {
    Stop,             // Original schema head band
    ExtremeHighFreq,  // New schema, fl < ehf_count
    HighFreq,         // New schema, next hf_count ranks
    FrequentlyUsed,
    Ordinary,
};

struct SchemaConfig {
    SchemaKind kind = SchemaKind::Original;
    uint32_t max_distance = 5;
    uint32_t sw_count = 500;   // Original only
    uint32_t fu_count = 1050;  // both schemas
    uint32_t ehf_count = 100;  // New only
    uint32_t hf_count = 400;   // New only
    bool proximity = true;     // false: build/serve the traditional index only

    // Band edges shared by the planner, the builder and store admission.
    // fst_bound: every component of an (f,s,t) key lies below it.
    // nsw_bound: lemmas below it go into NSW records and never carry them;
    //            it is also the lower edge of the (w,v) bands.
    uint32_t fst_bound() const {
        return kind == SchemaKind::Original ? sw_count : ehf_count + hf_count;
    }
    uint32_t nsw_bound() const {
        return kind == SchemaKind::Original ? sw_count : ehf_count;
    }
    uint32_t wv_lo() const { return nsw_bound(); }
    uint32_t wv_w_hi() const {
        return kind == SchemaKind::Original ? sw_count + fu_count
                                            : ehf_count + hf_count + fu_count;
    }

    void validate() const;  // throws std::invalid_argument
};

LemmaType lemma_type(uint32_t fl, const SchemaConfig& cfg);

const char* to_string(LemmaType t);
const char* to_string(SchemaKind k);

}  // namespace proxima
