#include "proxima/codec.hpp"

#include <algorithm>
#include <stdexcept>

#include "proxima/varint.hpp"

namespace proxima {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void put_doc_pos_groups(std::vector<uint8_t>& out, std::span<const TradPosting> postings) {
    put_uvarint(out, postings.size());
    size_t i = 0;
    uint32_t prev_doc = 0;
    while (i < postings.size()) {
        size_t j = i;
        while (j < postings.size() && postings[j].doc == postings[i].doc) ++j;
        put_uvarint(out, postings[i].doc - prev_doc);
        prev_doc = postings[i].doc;
        put_uvarint(out, j - i);
        uint32_t prev_pos = 0;
        for (size_t k = i; k < j; ++k) {
            put_uvarint(out, postings[k].pos - prev_pos);
            prev_pos = postings[k].pos;
        }
        i = j;
    }
}

std::vector<TradPosting> get_doc_pos_groups(ByteReader& r) {
    uint64_t count = r.uvarint();
    std::vector<TradPosting> postings;
    postings.reserve(count);
    uint32_t doc = 0;
    while (postings.size() < count) {
        doc += static_cast<uint32_t>(r.uvarint());
        uint64_t size = r.uvarint();
        uint32_t pos = 0;
        for (uint64_t k = 0; k < size; ++k) {
            pos += static_cast<uint32_t>(r.uvarint());
            postings.push_back({doc, pos});
        }
    }
    return postings;
}

void put_nsw_record(std::vector<uint8_t>& out, const NswRecord& rec) {
    std::vector<uint8_t> payload;
    put_uvarint(payload, rec.entries.size());
    int64_t prev_lemma = 0;
    for (const auto& e : rec.entries) {
        put_svarint(payload, static_cast<int64_t>(e.lemma) - prev_lemma);
        prev_lemma = e.lemma;
        put_svarint(payload, e.offset);
    }
    put_uvarint(out, payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
}

NswRecord get_nsw_record(ByteReader& r) {
    uint64_t len = r.uvarint();
    (void)len;  // the byte length exists so whole records can be skipped
    NswRecord rec;
    uint64_t n = r.uvarint();
    rec.entries.reserve(n);
    int64_t lemma = 0;
    for (uint64_t i = 0; i < n; ++i) {
        lemma += r.svarint();
        int32_t offset = static_cast<int32_t>(r.svarint());
        rec.entries.push_back({static_cast<LemmaId>(lemma), offset});
    }
    return rec;
}

}  // namespace

// ---------------------------------------------------------------------------
// Grouping and delta encoding
// ---------------------------------------------------------------------------

std::vector<DocGroup> group_postings(std::span<const TradPosting> postings) {
    std::vector<DocGroup> groups;
    const TradPosting* prev = nullptr;
    for (const auto& p : postings) {
        if (prev) require(*prev < p, "group_postings: input not strictly sorted by (doc,pos)");
        prev = &p;
        if (groups.empty() || groups.back().doc != p.doc) groups.push_back({p.doc, {}});
        groups.back().positions.push_back(p.pos);
    }
    return groups;
}

std::vector<TradPosting> ungroup_postings(std::span<const DocGroup> groups) {
    std::vector<TradPosting> postings;
    for (const auto& g : groups) {
        for (uint32_t pos : g.positions) postings.push_back({g.doc, pos});
    }
    return postings;
}

std::vector<DocGroup> delta_encode_groups(std::span<const DocGroup> groups) {
    std::vector<DocGroup> out;
    out.reserve(groups.size());
    uint32_t prev_doc = 0;
    for (const auto& g : groups) {
        DocGroup d;
        d.doc = g.doc - prev_doc;
        prev_doc = g.doc;
        uint32_t prev_pos = 0;
        d.positions.reserve(g.positions.size());
        for (uint32_t pos : g.positions) {
            d.positions.push_back(pos - prev_pos);
            prev_pos = pos;
        }
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<DocGroup> delta_decode_groups(std::span<const DocGroup> deltas) {
    std::vector<DocGroup> out;
    out.reserve(deltas.size());
    uint32_t doc = 0;
    for (const auto& d : deltas) {
        DocGroup g;
        doc += d.doc;
        g.doc = doc;
        uint32_t pos = 0;
        g.positions.reserve(d.positions.size());
        for (uint32_t dp : d.positions) {
            pos += dp;
            g.positions.push_back(pos);
        }
        out.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Layout selection
// ---------------------------------------------------------------------------

StreamLayout select_stream_layout(Family family, uint64_t list_length, uint64_t threshold) {
    require(threshold > 0, "select_stream_layout: threshold must be positive");
    switch (family) {
        case Family::Trad:
            return StreamLayout::OneStream;
        case Family::TradNsw:
            return list_length < threshold ? StreamLayout::TwoStreams
                                           : StreamLayout::ThreeStreams;
        case Family::Wv:
        case Family::Fst:
            return list_length < threshold ? StreamLayout::OneStream : StreamLayout::TwoStreams;
    }
    return StreamLayout::OneStream;
}

// ---------------------------------------------------------------------------
// TRAD
// ---------------------------------------------------------------------------

EncodedList encode_trad(std::span<const TradPosting> postings) {
    for (size_t i = 1; i < postings.size(); ++i)
        require(postings[i - 1] < postings[i], "encode_trad: unsorted or duplicate postings");
    EncodedList enc;
    enc.layout = StreamLayout::OneStream;
    enc.streams.resize(1);
    put_doc_pos_groups(enc.streams[0], postings);
    return enc;
}

std::vector<TradPosting> decode_trad(const EncodedList& enc) {
    ByteReader r(enc.streams.at(0));
    return get_doc_pos_groups(r);
}

// ---------------------------------------------------------------------------
// TRAD with NSW records
// ---------------------------------------------------------------------------

EncodedList encode_trad_nsw(std::span<const TradPosting> postings,
                            std::span<const NswRecord> records, StreamLayout layout,
                            uint32_t max_distance) {
    require(postings.size() == records.size(), "encode_trad_nsw: records must parallel postings");
    require(layout == StreamLayout::TwoStreams || layout == StreamLayout::ThreeStreams,
            "encode_trad_nsw: layout must be two or three streams");
    for (size_t i = 1; i < postings.size(); ++i)
        require(postings[i - 1] < postings[i], "encode_trad_nsw: unsorted or duplicate postings");
    for (const auto& rec : records) {
        for (size_t i = 0; i < rec.entries.size(); ++i) {
            const auto& e = rec.entries[i];
            require(static_cast<uint32_t>(std::abs(e.offset)) <= max_distance,
                    "encode_trad_nsw: NSW offset exceeds max distance");
            if (i) require(nsw_entry_less(rec.entries[i - 1], e) ||
                               rec.entries[i - 1] == e,  // equality rejected below
                           "encode_trad_nsw: NSW entries not sorted by (offset, lemma)");
            if (i) require(!(rec.entries[i - 1] == e), "encode_trad_nsw: duplicate NSW entry");
        }
    }

    EncodedList enc;
    enc.layout = layout;
    enc.streams.resize(stream_count(layout));
    if (layout == StreamLayout::TwoStreams) {
        put_doc_pos_groups(enc.streams[0], postings);
        for (const auto& rec : records) put_nsw_record(enc.streams[1], rec);
        return enc;
    }
    // Three streams: (doc + group sizes) / (positions) / (NSW).
    auto& docs = enc.streams[0];
    auto& positions = enc.streams[1];
    put_uvarint(docs, postings.size());
    size_t i = 0;
    uint32_t prev_doc = 0;
    while (i < postings.size()) {
        size_t j = i;
        while (j < postings.size() && postings[j].doc == postings[i].doc) ++j;
        put_uvarint(docs, postings[i].doc - prev_doc);
        prev_doc = postings[i].doc;
        put_uvarint(docs, j - i);
        uint32_t prev_pos = 0;
        for (size_t k = i; k < j; ++k) {
            put_uvarint(positions, postings[k].pos - prev_pos);
            prev_pos = postings[k].pos;
        }
        i = j;
    }
    for (const auto& rec : records) put_nsw_record(enc.streams[2], rec);
    return enc;
}

DecodedNswList decode_trad_nsw(const EncodedList& enc) {
    DecodedNswList out;
    size_t expected = stream_count(enc.layout);
    out.nsw_present = enc.streams.size() == expected;

    if (enc.layout == StreamLayout::TwoStreams) {
        ByteReader r(enc.streams.at(0));
        out.postings = get_doc_pos_groups(r);
    } else {
        ByteReader docs(enc.streams.at(0));
        ByteReader positions(enc.streams.at(1));
        uint64_t count = docs.uvarint();
        out.postings.reserve(count);
        uint32_t doc = 0;
        while (out.postings.size() < count) {
            doc += static_cast<uint32_t>(docs.uvarint());
            uint64_t size = docs.uvarint();
            uint32_t pos = 0;
            for (uint64_t k = 0; k < size; ++k) {
                pos += static_cast<uint32_t>(positions.uvarint());
                out.postings.push_back({doc, pos});
            }
        }
    }
    if (out.nsw_present) {
        size_t nsw = *nsw_stream_index(Family::TradNsw, enc.layout);
        ByteReader r(enc.streams.at(nsw));
        out.records.reserve(out.postings.size());
        for (size_t k = 0; k < out.postings.size(); ++k) out.records.push_back(get_nsw_record(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pair and triple lists
// ---------------------------------------------------------------------------

namespace {

// Shared (doc,pos) framing for lists whose positions may repeat. `distances`
// streams either interleave after each position (one stream) or fill a
// second stream in posting order.
template <typename P, typename PutDist>
EncodedList encode_positional(std::span<const P> postings, StreamLayout layout,
                              PutDist&& put_dist, const char* what) {
    require(layout == StreamLayout::OneStream || layout == StreamLayout::TwoStreams, what);
    EncodedList enc;
    enc.layout = layout;
    enc.streams.resize(stream_count(layout));
    auto& main = enc.streams[0];
    auto* dist = layout == StreamLayout::TwoStreams ? &enc.streams[1] : &enc.streams[0];

    put_uvarint(main, postings.size());
    size_t i = 0;
    uint32_t prev_doc = 0;
    while (i < postings.size()) {
        size_t j = i;
        while (j < postings.size() && postings[j].doc == postings[i].doc) ++j;
        put_uvarint(main, postings[i].doc - prev_doc);
        prev_doc = postings[i].doc;
        put_uvarint(main, j - i);
        uint32_t prev_pos = 0;
        for (size_t k = i; k < j; ++k) {
            if (layout == StreamLayout::OneStream) {
                put_uvarint(main, postings[k].pos - prev_pos);
                prev_pos = postings[k].pos;
                put_dist(*dist, postings[k]);
            } else {
                put_uvarint(main, postings[k].pos - prev_pos);
                prev_pos = postings[k].pos;
            }
        }
        i = j;
    }
    if (layout == StreamLayout::TwoStreams) {
        for (const auto& p : postings) put_dist(*dist, p);
    }
    return enc;
}

template <typename P, typename GetDist>
std::vector<P> decode_positional(const EncodedList& enc, GetDist&& get_dist) {
    std::vector<P> out;
    ByteReader main(enc.streams.at(0));
    uint64_t count = main.uvarint();
    out.reserve(count);
    uint32_t doc = 0;
    while (out.size() < count) {
        doc += static_cast<uint32_t>(main.uvarint());
        uint64_t size = main.uvarint();
        uint32_t pos = 0;
        for (uint64_t k = 0; k < size; ++k) {
            pos += static_cast<uint32_t>(main.uvarint());
            P p{};
            p.doc = doc;
            p.pos = pos;
            if (enc.layout == StreamLayout::OneStream) get_dist(main, p);
            out.push_back(p);
        }
    }
    if (enc.layout == StreamLayout::TwoStreams) {
        ByteReader dist(enc.streams.at(1));
        for (auto& p : out) get_dist(dist, p);
    }
    return out;
}

}  // namespace

EncodedList encode_pairs(std::span<const PairPosting> postings, StreamLayout layout,
                         uint32_t max_distance) {
    for (size_t i = 0; i < postings.size(); ++i) {
        require(static_cast<uint32_t>(std::abs(postings[i].d1)) <= max_distance,
                "encode_pairs: offset exceeds max distance");
        if (i) require(postings[i - 1] < postings[i], "encode_pairs: unsorted or duplicate postings");
    }
    return encode_positional(postings, layout,
                             [](std::vector<uint8_t>& out, const PairPosting& p) {
                                 put_svarint(out, p.d1);
                             },
                             "encode_pairs: layout must be one or two streams");
}

std::vector<PairPosting> decode_pairs(const EncodedList& enc) {
    return decode_positional<PairPosting>(enc, [](ByteReader& r, PairPosting& p) {
        p.d1 = static_cast<int32_t>(r.svarint());
    });
}

EncodedList encode_triples(std::span<const TriplePosting> postings, StreamLayout layout,
                           uint32_t max_distance) {
    for (size_t i = 0; i < postings.size(); ++i) {
        require(static_cast<uint32_t>(std::abs(postings[i].d1)) <= max_distance &&
                    static_cast<uint32_t>(std::abs(postings[i].d2)) <= max_distance,
                "encode_triples: offset exceeds max distance");
        if (i)
            require(postings[i - 1] < postings[i], "encode_triples: unsorted or duplicate postings");
    }
    return encode_positional(postings, layout,
                             [](std::vector<uint8_t>& out, const TriplePosting& p) {
                                 put_svarint(out, p.d1);
                                 put_svarint(out, p.d2);
                             },
                             "encode_triples: layout must be one or two streams");
}

std::vector<TriplePosting> decode_triples(const EncodedList& enc) {
    return decode_positional<TriplePosting>(enc, [](ByteReader& r, TriplePosting& p) {
        p.d1 = static_cast<int32_t>(r.svarint());
        p.d2 = static_cast<int32_t>(r.svarint());
    });
}

}  // namespace proxima
