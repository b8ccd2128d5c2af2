#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "proxima/schema.hpp"

namespace proxima {

struct TradPosting {
    uint32_t doc = 0;
    uint32_t pos = 0;
    friend auto operator<=>(const TradPosting&, const TradPosting&) = default;
};

// One stop-band lemma occurrence near the host posting. offset is the signed
// word distance; it is 0 only when a multi-lemma word puts the stop lemma at
// the host position itself.
struct NswEntry {
    LemmaId lemma = 0;
    int32_t offset = 0;
    friend bool operator==(const NswEntry&, const NswEntry&) = default;
};

inline bool nsw_entry_less(const NswEntry& a, const NswEntry& b) {
    if (a.offset != b.offset) return a.offset < b.offset;
    return a.lemma < b.lemma;
}

struct NswRecord {
    std::vector<NswEntry> entries;  // sorted by (offset, lemma)
    friend bool operator==(const NswRecord&, const NswRecord&) = default;
};

struct PairPosting {
    uint32_t doc = 0;
    uint32_t pos = 0;  // occurrence of the key's first component
    int32_t d1 = 0;    // signed offset to the second component's occurrence
    friend auto operator<=>(const PairPosting&, const PairPosting&) = default;
};

struct TriplePosting {
    uint32_t doc = 0;
    uint32_t pos = 0;  // occurrence of f
    int32_t d1 = 0;    // signed offset to the s occurrence
    int32_t d2 = 0;    // signed offset to the t occurrence
    friend auto operator<=>(const TriplePosting&, const TriplePosting&) = default;
};

enum class Family : uint8_t { Trad = 0, TradNsw = 1, Wv = 2, Fst = 3 };

inline constexpr std::array<Family, 4> kAllFamilies{Family::Trad, Family::TradNsw,
                                                    Family::Wv, Family::Fst};

const char* family_name(Family f);

enum class StreamLayout : uint8_t { OneStream = 1, TwoStreams = 2, ThreeStreams = 3 };

inline size_t stream_count(StreamLayout l) { return static_cast<size_t>(l); }

// Index of the NSW stream for a TRAD_NSW list, when the layout carries one.
std::optional<size_t> nsw_stream_index(Family f, StreamLayout l);

// Canonical 1-, 2- or 3-component key. Components are lemma ids (FL-numbers)
// in ascending order; equal components mean the same lemma repeated.
struct IndexKey {
    Family family = Family::Trad;
    uint8_t arity = 1;
    std::array<LemmaId, 3> lemmas{};

    static IndexKey trad(LemmaId x);
    static IndexKey trad_nsw(LemmaId x);
    static IndexKey wv(LemmaId a, LemmaId b);                // canonicalizes
    static IndexKey fst2(LemmaId f, LemmaId s);              // canonicalizes
    static IndexKey fst3(LemmaId f, LemmaId s, LemmaId t);   // canonicalizes

    std::span<const LemmaId> components() const { return {lemmas.data(), arity}; }

    friend bool operator==(const IndexKey&, const IndexKey&) = default;
    friend std::strong_ordering operator<=>(const IndexKey& a, const IndexKey& b);
};

// Schema admission rules. A key may be stored only if this holds.
bool key_admissible(const IndexKey& key, const SchemaConfig& cfg);

// Debug/logging form: family(fl,fl,...)
std::string key_repr(const IndexKey& key);

}  // namespace proxima
