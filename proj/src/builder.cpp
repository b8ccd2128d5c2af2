#include "proxima/builder.hpp"

#include <algorithm>

#include "proxima/codec.hpp"

namespace proxima {

namespace {

// All (position, lemma) occurrences of one window, in position order.
struct Occurrence {
    uint32_t pos;
    LemmaId lemma;
};

}  // namespace

DocPostings index_document(uint32_t doc, const DocTape& tape, const SchemaConfig& cfg) {
    DocPostings out;
    const uint32_t n = static_cast<uint32_t>(tape.size());
    const uint32_t D = cfg.max_distance;

    for (uint32_t p = 0; p < n; ++p) {
        for (LemmaId x : tape[p]) out.trad[IndexKey::trad(x)].push_back({doc, p});
    }
    if (!cfg.proximity) return out;

    const uint32_t nsw_bound = cfg.nsw_bound();
    const uint32_t fst_bound = cfg.fst_bound();
    const uint32_t wv_lo = cfg.wv_lo();
    const uint32_t wv_hi = cfg.wv_w_hi();

    std::vector<Occurrence> window;
    std::vector<Occurrence> window_stop;  // below fst_bound, for triple keys

    for (uint32_t p = 0; p < n; ++p) {
        const uint32_t qlo = p > D ? p - D : 0;
        const uint32_t qhi = std::min(n == 0 ? 0 : n - 1, p + D);

        window.clear();
        window_stop.clear();
        for (uint32_t q = qlo; q <= qhi && q < n; ++q) {
            for (LemmaId y : tape[q]) {
                window.push_back({q, y});
                if (y < fst_bound) window_stop.push_back({q, y});
            }
        }

        for (LemmaId x : tape[p]) {
            if (x >= nsw_bound) {
                NswRecord rec;
                for (const auto& o : window) {
                    if (o.lemma < nsw_bound) {
                        rec.entries.push_back(
                            {o.lemma, static_cast<int32_t>(o.pos) - static_cast<int32_t>(p)});
                    }
                }
                std::sort(rec.entries.begin(), rec.entries.end(), nsw_entry_less);
                auto& list = out.trad_nsw[IndexKey::trad_nsw(x)];
                list.postings.push_back({doc, p});
                list.records.push_back(std::move(rec));
            }

            // (w,v): x as the key's first component, every admissible partner
            // occurrence in the window. A lemma pairs with itself only via a
            // distinct position; distinct lemmas may share one position (d=0).
            if (x >= wv_lo && x < wv_hi) {
                for (const auto& o : window) {
                    if (o.lemma < x) continue;  // canonical order puts x first
                    if (o.lemma == x && o.pos == p) continue;
                    out.wv[IndexKey::wv(x, o.lemma)].push_back(
                        {doc, p, static_cast<int32_t>(o.pos) - static_cast<int32_t>(p)});
                }
            }

            // (f,s,t): x as f, every (s,t) occurrence combination in the
            // window with fl(f) <= fl(s) <= fl(t). Pair keys record each
            // s co-occurrence so two-lemma stop queries stay servable.
            if (x < fst_bound) {
                for (const auto& s : window_stop) {
                    if (s.lemma < x) continue;
                    if (s.lemma == x && s.pos == p) continue;
                    int32_t d1 = static_cast<int32_t>(s.pos) - static_cast<int32_t>(p);
                    out.fst[IndexKey::fst2(x, s.lemma)].push_back({doc, p, d1});
                    for (const auto& t : window_stop) {
                        if (t.lemma < s.lemma) continue;
                        if (t.lemma == x && t.pos == p) continue;
                        if (t.lemma == s.lemma && t.pos == s.pos) continue;
                        out.fst[IndexKey::fst3(x, s.lemma, t.lemma)].push_back(
                            {doc, p, d1, static_cast<int32_t>(t.pos) - static_cast<int32_t>(p)});
                    }
                }
            }
        }
    }

    for (auto& [key, list] : out.wv) std::sort(list.begin(), list.end());
    // Pair-shaped FST lists keep d2 == 0, so one ordering covers both arities.
    for (auto& [key, list] : out.fst) std::sort(list.begin(), list.end());
    return out;
}

// ---------------------------------------------------------------------------
// IndexBuilder
// ---------------------------------------------------------------------------

IndexBuilder::IndexBuilder(Lexicon lex, SchemaConfig cfg, BuildOptions opts)
    : lexicon_(std::move(lex)), cfg_(cfg), opts_(opts) {
    cfg_.validate();
}

IndexBuilder IndexBuilder::for_new_index(const std::vector<Document>& corpus,
                                         const Dictionary& dict, const SchemaConfig& cfg,
                                         BuildOptions opts) {
    Lexicon lex;
    lex.dict = dict;
    lex.fl = build_fl_list(corpus, dict);
    return IndexBuilder(std::move(lex), cfg, opts);
}

IndexBuilder IndexBuilder::for_append(const IndexStore& store, BuildOptions opts) {
    opts.stream_split_threshold = store.manifest().stream_split_threshold;
    IndexBuilder b(store.lexicon(), store.schema(), opts);
    b.base_docs_ = static_cast<uint32_t>(store.doc_count());
    b.append_base_ = &store;
    return b;
}

IndexBuilder IndexBuilder::with_lexicon(Lexicon lex, const SchemaConfig& cfg, BuildOptions opts) {
    return IndexBuilder(std::move(lex), cfg, opts);
}

void IndexBuilder::add_document(const Document& doc) {
    uint32_t ordinal = base_docs_ + static_cast<uint32_t>(doc_names_.size());
    doc_names_.push_back(doc.id);

    DocTape tape = append_base_ ? make_tape_interning(doc.text, lexicon_)
                                : make_tape(doc.text, lexicon_);
    tokens_ += tape.size();

    DocPostings dp = index_document(ordinal, tape, cfg_);
    for (auto& [key, list] : dp.trad) {
        auto& dst = acc_.trad[key];
        dst.insert(dst.end(), list.begin(), list.end());
    }
    for (auto& [key, list] : dp.trad_nsw) {
        auto& dst = acc_.trad_nsw[key];
        dst.postings.insert(dst.postings.end(), list.postings.begin(), list.postings.end());
        dst.records.insert(dst.records.end(), std::make_move_iterator(list.records.begin()),
                           std::make_move_iterator(list.records.end()));
    }
    for (auto& [key, list] : dp.wv) {
        auto& dst = acc_.wv[key];
        dst.insert(dst.end(), list.begin(), list.end());
    }
    for (auto& [key, list] : dp.fst) {
        auto& dst = acc_.fst[key];
        dst.insert(dst.end(), list.begin(), list.end());
    }
}

BuildReport IndexBuilder::commit_to(const std::filesystem::path& index_dir) {
    IndexWriter writer(index_dir);
    if (append_base_ && !writer.has_previous())
        throw StoreError("append build against a directory with no committed index");
    writer.set_schema(cfg_);
    writer.set_threshold(opts_.stream_split_threshold);
    writer.set_lexicon(lexicon_);

    std::vector<std::string> all_names;
    if (append_base_) all_names = append_base_->doc_names();
    all_names.insert(all_names.end(), doc_names_.begin(), doc_names_.end());
    writer.set_doc_names(std::move(all_names));

    const uint32_t threshold = opts_.stream_split_threshold;
    const uint32_t D = cfg_.max_distance;

    // Appends merge each touched key with its committed list: new documents
    // have higher ordinals, so concatenation preserves (doc,pos) order.
    auto prior_trad = [&](const IndexKey& key) -> std::vector<TradPosting> {
        if (!append_base_) return {};
        if (auto enc = append_base_->get_streams(key, false)) return decode_trad(*enc);
        return {};
    };

    for (auto& [key, list] : acc_.trad) {
        auto merged = prior_trad(key);
        merged.insert(merged.end(), list.begin(), list.end());
        writer.put_posting_list(key, encode_trad(merged), merged.size());
    }
    for (auto& [key, list] : acc_.trad_nsw) {
        std::vector<TradPosting> postings;
        std::vector<NswRecord> records;
        if (append_base_) {
            if (auto enc = append_base_->get_streams(key, true)) {
                auto old = decode_trad_nsw(*enc);
                postings = std::move(old.postings);
                records = std::move(old.records);
            }
        }
        postings.insert(postings.end(), list.postings.begin(), list.postings.end());
        records.insert(records.end(), list.records.begin(), list.records.end());
        auto layout = select_stream_layout(Family::TradNsw, postings.size(), threshold);
        writer.put_posting_list(key, encode_trad_nsw(postings, records, layout, D),
                                postings.size());
    }
    for (auto& [key, list] : acc_.wv) {
        std::vector<PairPosting> merged;
        if (append_base_) {
            if (auto enc = append_base_->get_streams(key, true))
                merged = decode_pairs(*enc);
        }
        merged.insert(merged.end(), list.begin(), list.end());
        auto layout = select_stream_layout(Family::Wv, merged.size(), threshold);
        writer.put_posting_list(key, encode_pairs(merged, layout, D), merged.size());
    }
    for (auto& [key, list] : acc_.fst) {
        if (key.arity == 2) {
            std::vector<PairPosting> merged;
            if (append_base_) {
                if (auto enc = append_base_->get_streams(key, true))
                    merged = decode_pairs(*enc);
            }
            for (const auto& t : list) merged.push_back({t.doc, t.pos, t.d1});
            auto layout = select_stream_layout(Family::Fst, merged.size(), threshold);
            writer.put_posting_list(key, encode_pairs(merged, layout, D), merged.size());
        } else {
            std::vector<TriplePosting> merged;
            if (append_base_) {
                if (auto enc = append_base_->get_streams(key, true))
                    merged = decode_triples(*enc);
            }
            merged.insert(merged.end(), list.begin(), list.end());
            auto layout = select_stream_layout(Family::Fst, merged.size(), threshold);
            writer.put_posting_list(key, encode_triples(merged, layout, D), merged.size());
        }
    }

    // Untouched committed keys keep their bytes where they are.
    if (append_base_) {
        auto touched = [&](const IndexKey& key) {
            switch (key.family) {
                case Family::Trad: return acc_.trad.count(key) != 0;
                case Family::TradNsw: return acc_.trad_nsw.count(key) != 0;
                case Family::Wv: return acc_.wv.count(key) != 0;
                case Family::Fst: return acc_.fst.count(key) != 0;
            }
            return false;
        };
        for (Family f : kAllFamilies) {
            append_base_->for_each_entry(f, [&](const KeyDirectoryEntry& e) {
                if (!touched(e.key)) writer.carry_over(e);
            });
        }
    }

    writer.commit();

    BuildReport report;
    report.documents = doc_names_.size();
    report.tokens = tokens_;
    report.stats = IndexStore::open(index_dir).stats();
    return report;
}

BuildReport build_all(const std::vector<Document>& corpus, const Dictionary& dict,
                      const SchemaConfig& cfg, const std::filesystem::path& index_dir,
                      BuildOptions opts) {
    auto builder = IndexBuilder::for_new_index(corpus, dict, cfg, opts);
    for (const auto& doc : corpus) builder.add_document(doc);
    return builder.commit_to(index_dir);
}

}  // namespace proxima
