#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "proxima/postings.hpp"

namespace proxima {

// ---------------------------------------------------------------------------
// Document grouping + delta encoding, the two schemes applied in sequence.
//
// Grouped form: one entry per document holding the document id and the
// position list. Delta form: the first document id is stored as-is and the
// rest as differences from the previous group; within a group the first
// position is stored as-is and the rest as differences from the previous one.
// ---------------------------------------------------------------------------

struct DocGroup {
    uint32_t doc = 0;
    std::vector<uint32_t> positions;
    friend bool operator==(const DocGroup&, const DocGroup&) = default;
};

// Throws std::invalid_argument on unsorted or duplicated input.
std::vector<DocGroup> group_postings(std::span<const TradPosting> postings);
std::vector<TradPosting> ungroup_postings(std::span<const DocGroup> groups);

std::vector<DocGroup> delta_encode_groups(std::span<const DocGroup> groups);
std::vector<DocGroup> delta_decode_groups(std::span<const DocGroup> deltas);

// ---------------------------------------------------------------------------
// Stream layout selection.
//
// TRAD lists always use one stream. TRAD_NSW lists use two streams
// ((doc,pos) + NSW) while short and three ((doc) + (pos) + NSW) once they
// reach `threshold` postings, so the NSW stream can always be skipped.
// WV/FST lists use one stream while short, else two ((doc,pos) + distances).
// ---------------------------------------------------------------------------

StreamLayout select_stream_layout(Family family, uint64_t list_length, uint64_t threshold);

// ---------------------------------------------------------------------------
// Wire form. Every list's first stream starts with uvarint(posting count);
// remaining streams are pure payload. Values are base-128 varints, signed
// offsets zigzag-mapped. NSW records are byte-length-prefixed.
// ---------------------------------------------------------------------------

struct EncodedList {
    StreamLayout layout = StreamLayout::OneStream;
    std::vector<std::vector<uint8_t>> streams;

    uint64_t total_bytes() const {
        uint64_t n = 0;
        for (const auto& s : streams) n += s.size();
        return n;
    }
};

EncodedList encode_trad(std::span<const TradPosting> postings);

// `records` parallel to `postings`; every offset must satisfy
// |offset| <= max_distance or the encoder rejects the list.
EncodedList encode_trad_nsw(std::span<const TradPosting> postings,
                            std::span<const NswRecord> records, StreamLayout layout,
                            uint32_t max_distance);

EncodedList encode_pairs(std::span<const PairPosting> postings, StreamLayout layout,
                         uint32_t max_distance);

EncodedList encode_triples(std::span<const TriplePosting> postings, StreamLayout layout,
                           uint32_t max_distance);

std::vector<TradPosting> decode_trad(const EncodedList& enc);

struct DecodedNswList {
    std::vector<TradPosting> postings;
    std::vector<NswRecord> records;  // empty when the NSW stream was skipped
    bool nsw_present = false;
};

// Accepts lists whose NSW stream was not fetched (streams shorter than the
// layout); the (doc,pos) sequence decodes identically either way.
DecodedNswList decode_trad_nsw(const EncodedList& enc);

std::vector<PairPosting> decode_pairs(const EncodedList& enc);
std::vector<TriplePosting> decode_triples(const EncodedList& enc);

}  // namespace proxima
