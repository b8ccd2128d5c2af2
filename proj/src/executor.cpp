#include "proxima/executor.hpp"

#include <algorithm>

#include "proxima/codec.hpp"

namespace proxima {

namespace {

// doc -> sorted unique positions
using DocPositions = std::map<uint32_t, std::vector<uint32_t>>;

void sort_unique(std::vector<uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

DocPositions intersect_positions(const DocPositions& a, const DocPositions& b) {
    DocPositions out;
    for (const auto& [doc, pa] : a) {
        auto it = b.find(doc);
        if (it == b.end()) continue;
        std::vector<uint32_t> common;
        std::set_intersection(pa.begin(), pa.end(), it->second.begin(), it->second.end(),
                              std::back_inserter(common));
        if (!common.empty()) out.emplace(doc, std::move(common));
    }
    return out;
}

// Keeps anchor positions that have an occurrence of the constraint lemma
// within the window.
DocPositions filter_window(const DocPositions& anchors, const DocPositions& occurrences,
                           uint32_t max_distance) {
    DocPositions out;
    for (const auto& [doc, positions] : anchors) {
        auto it = occurrences.find(doc);
        if (it == occurrences.end()) continue;
        const auto& occ = it->second;
        std::vector<uint32_t> kept;
        for (uint32_t p : positions) {
            uint32_t lo = p > max_distance ? p - max_distance : 0;
            auto q = std::lower_bound(occ.begin(), occ.end(), lo);
            if (q != occ.end() && *q <= static_cast<uint64_t>(p) + max_distance)
                kept.push_back(p);
        }
        if (!kept.empty()) out.emplace(doc, std::move(kept));
    }
    return out;
}

DocPositions positions_of(const std::vector<TradPosting>& postings) {
    DocPositions out;
    for (const auto& p : postings) out[p.doc].push_back(p.pos);
    return out;
}

PartMatches execute_part(const QueryPart& part, const SchemaConfig& cfg, const IndexStore& store,
                         ReadStats& stats) {
    const uint32_t D = cfg.max_distance;

    // A lemma the corpus has never seen cannot co-occur with anything.
    if (!part.anchor_lemma().id) return {};
    for (const auto& r : part.residual) {
        if (!r.id) return {};
    }
    const LemmaId anchor = *part.anchor_lemma().id;

    std::optional<DocPositions> anchors;
    auto constrain = [&](DocPositions s) {
        if (!anchors) {
            anchors = std::move(s);
        } else {
            anchors = intersect_positions(*anchors, s);
        }
    };

    if (part.anchor_from_nsw) {
        DocPositions base;
        if (auto enc = store.get_streams(IndexKey::trad_nsw(anchor), true, &stats)) {
            auto list = decode_trad_nsw(*enc);
            stats.of(Family::TradNsw).postings_decoded += list.postings.size();
            for (size_t i = 0; i < list.postings.size(); ++i) {
                const auto& rec = list.records[i];
                bool ok = true;
                for (LemmaId check : part.nsw_checks) {
                    bool found = std::any_of(rec.entries.begin(), rec.entries.end(),
                                             [&](const NswEntry& e) { return e.lemma == check; });
                    if (!found) {
                        ok = false;
                        break;
                    }
                }
                if (ok) base[list.postings[i].doc].push_back(list.postings[i].pos);
            }
        }
        constrain(std::move(base));
    } else if (part.keys.empty()) {
        DocPositions base;
        if (auto enc = store.get_streams(IndexKey::trad(anchor), false, &stats)) {
            auto postings = decode_trad(*enc);
            stats.of(Family::Trad).postings_decoded += postings.size();
            base = positions_of(postings);
        }
        constrain(std::move(base));
    }

    for (const auto& key : part.keys) {
        DocPositions derived;
        if (auto enc = store.get_streams(key, false, &stats)) {
            if (key.family == Family::Wv || (key.family == Family::Fst && key.arity == 2)) {
                auto postings = decode_pairs(*enc);
                stats.of(key.family).postings_decoded += postings.size();
                bool anchor_first = key.lemmas[0] == anchor;
                for (const auto& p : postings) {
                    uint32_t pos = anchor_first
                                       ? p.pos
                                       : static_cast<uint32_t>(static_cast<int64_t>(p.pos) + p.d1);
                    derived[p.doc].push_back(pos);
                }
            } else {
                auto postings = decode_triples(*enc);
                stats.of(key.family).postings_decoded += postings.size();
                for (const auto& p : postings) derived[p.doc].push_back(p.pos);
            }
            for (auto& [doc, positions] : derived) sort_unique(positions);
        }
        constrain(std::move(derived));
        if (anchors->empty()) return {};
    }

    if (!anchors) return {};

    for (const auto& r : part.residual) {
        if (anchors->empty()) return {};
        DocPositions occ;
        if (auto enc = store.get_streams(IndexKey::trad(*r.id), false, &stats)) {
            auto postings = decode_trad(*enc);
            stats.of(Family::Trad).postings_decoded += postings.size();
            occ = positions_of(postings);
        }
        anchors = filter_window(*anchors, occ, D);
    }
    return *anchors;
}

}  // namespace

std::vector<uint32_t> SearchResult::docs() const {
    std::vector<uint32_t> out;
    for (const auto& part : parts) {
        for (const auto& [doc, positions] : part) out.push_back(doc);
    }
    sort_unique(out);
    return out;
}

bool SearchResult::empty() const {
    for (const auto& part : parts) {
        if (!part.empty()) return false;
    }
    return true;
}

SearchResult execute(const QueryPlan& plan, const IndexStore& store) {
    SearchResult res;
    res.parts.reserve(plan.parts.size());
    for (const auto& part : plan.parts)
        res.parts.push_back(execute_part(part, plan.cfg, store, res.stats));
    return res;
}

SearchResult oracle_search(const std::string& query, const std::vector<Document>& corpus,
                           const Lexicon& lex, const SchemaConfig& cfg) {
    std::vector<DocTape> tapes;
    tapes.reserve(corpus.size());
    for (const auto& doc : corpus) tapes.push_back(make_tape(doc.text, lex));
    return oracle_search_tapes(query, tapes, lex, cfg);
}

SearchResult oracle_search_tapes(const std::string& query, const std::vector<DocTape>& tapes,
                                 const Lexicon& lex, const SchemaConfig& cfg) {
    SearchResult res;
    auto words = tokenize(query);
    auto parts = derive_parts(words, lex, cfg);

    auto has = [](const std::vector<LemmaId>& ids, LemmaId id) {
        return std::binary_search(ids.begin(), ids.end(), id);
    };

    for (const auto& part : parts) {
        PartMatches matches;
        bool all_known = std::all_of(part.lemmas.begin(), part.lemmas.end(),
                                     [](const QueryLemma& l) { return l.id.has_value(); });
        if (all_known) {
            const LemmaId anchor = *part.anchor_lemma().id;
            const uint32_t D = cfg.max_distance;
            for (uint32_t d = 0; d < tapes.size(); ++d) {
                const DocTape& tape = tapes[d];
                const uint32_t n = static_cast<uint32_t>(tape.size());
                for (uint32_t p = 0; p < n; ++p) {
                    if (!has(tape[p], anchor)) continue;
                    bool ok = true;
                    for (size_t i = 0; i < part.lemmas.size() && ok; ++i) {
                        if (i == part.anchor) continue;
                        LemmaId want = *part.lemmas[i].id;
                        bool found = false;
                        uint32_t qlo = p > D ? p - D : 0;
                        for (uint32_t q = qlo; q < n && q <= p + D; ++q) {
                            if (has(tape[q], want)) {
                                found = true;
                                break;
                            }
                        }
                        ok = found;
                    }
                    if (ok) matches[d].push_back(p);
                }
            }
        }
        res.parts.push_back(std::move(matches));
    }
    return res;
}

std::vector<uint32_t> doc_level_search(const std::string& query, const IndexStore& store,
                                       ReadStats* stats) {
    const Lexicon& lex = store.lexicon();
    std::vector<QueryLemma> lemmas;
    for (const auto& word : tokenize(query)) {
        QueryLemma effective;
        for (const auto& lemma : lemmatize(word, lex.dict)) {
            QueryLemma cand{lemma, lex.fl.find(lemma)};
            uint32_t cand_fl = cand.fl(), eff_fl = effective.fl();
            if (effective.text.empty() || cand_fl < eff_fl ||
                (cand_fl == eff_fl && cand.text < effective.text))
                effective = cand;
        }
        bool seen = std::any_of(lemmas.begin(), lemmas.end(),
                                [&](const QueryLemma& l) { return l.text == effective.text; });
        if (!seen) lemmas.push_back(std::move(effective));
    }
    if (lemmas.empty()) return {};

    std::optional<std::vector<uint32_t>> docs;
    for (const auto& l : lemmas) {
        std::vector<uint32_t> present;
        if (l.id) {
            if (auto enc = store.get_streams(IndexKey::trad(*l.id), false, stats)) {
                auto postings = decode_trad(*enc);
                if (stats) stats->of(Family::Trad).postings_decoded += postings.size();
                for (const auto& p : postings) present.push_back(p.doc);
                sort_unique(present);
            }
        }
        if (!docs) {
            docs = std::move(present);
        } else {
            std::vector<uint32_t> common;
            std::set_intersection(docs->begin(), docs->end(), present.begin(), present.end(),
                                  std::back_inserter(common));
            docs = std::move(common);
        }
        if (docs->empty()) break;
    }
    return *docs;
}

}  // namespace proxima
