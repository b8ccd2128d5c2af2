#include "proxima/planner.hpp"

#include <algorithm>
#include <sstream>

namespace proxima {

const char* to_string(QueryClass c) {
    switch (c) {
        case QueryClass::Q1: return "Q1";
        case QueryClass::Q2: return "Q2";
        case QueryClass::Q3: return "Q3";
        case QueryClass::Q4: return "Q4";
        case QueryClass::Q5: return "Q5";
    }
    return "?";
}

std::vector<std::pair<uint32_t, uint32_t>> split_query(size_t word_count, uint32_t max_distance) {
    std::vector<std::pair<uint32_t, uint32_t>> spans;
    uint32_t begin = 0;
    auto n = static_cast<uint32_t>(word_count);
    while (begin < n) {
        uint32_t end = std::min(n, begin + max_distance);
        spans.push_back({begin, end});
        begin = end;
    }
    return spans;
}

QueryClass classify_part(std::span<const QueryLemma> lemmas, const SchemaConfig& cfg) {
    bool all_fst = true, any_stop = false, any_band = false, any_ordinary = false;
    for (const auto& l : lemmas) {
        uint32_t fl = l.fl();
        if (fl >= cfg.fst_bound()) all_fst = false;
        if (fl < cfg.nsw_bound()) any_stop = true;
        if (fl >= cfg.wv_lo() && fl < cfg.wv_w_hi()) any_band = true;
        if (fl >= cfg.wv_w_hi()) any_ordinary = true;
    }
    if (all_fst) return QueryClass::Q1;
    if (any_stop) return QueryClass::Q2;
    if (any_band && !any_ordinary) return QueryClass::Q3;
    if (any_band) return QueryClass::Q4;
    return QueryClass::Q5;
}

namespace {

bool rank_less(const QueryLemma& a, const QueryLemma& b) {
    if (a.fl() != b.fl()) return a.fl() < b.fl();
    return a.text < b.text;
}

}  // namespace

size_t choose_anchor(std::span<const QueryLemma> lemmas, QueryClass cls,
                     const SchemaConfig& cfg) {
    size_t best = SIZE_MAX;
    auto better = [&](size_t i) {
        if (best == SIZE_MAX) return true;
        return cls == QueryClass::Q1 ? rank_less(lemmas[i], lemmas[best])
                                     : rank_less(lemmas[best], lemmas[i]);
    };
    auto eligible = [&](const QueryLemma& l) {
        switch (cls) {
            case QueryClass::Q1:
            case QueryClass::Q5:
                return true;
            case QueryClass::Q2:
                return l.fl() >= cfg.nsw_bound();
            case QueryClass::Q3:
            case QueryClass::Q4:
                return l.fl() >= cfg.wv_lo() && l.fl() < cfg.wv_w_hi();
        }
        return true;
    };
    for (size_t i = 0; i < lemmas.size(); ++i) {
        if (eligible(lemmas[i]) && better(i)) best = i;
    }
    return best;  // every class has at least one eligible lemma by definition
}

std::vector<QueryPart> derive_parts(const std::vector<std::string>& words, const Lexicon& lex,
                                    const SchemaConfig& cfg) {
    std::vector<QueryPart> parts;
    for (auto [begin, end] : split_query(words.size(), cfg.max_distance)) {
        QueryPart part;
        part.begin = begin;
        part.end = end;
        for (uint32_t w = begin; w < end; ++w) {
            // A word with several lemmas acts as its most frequent one.
            QueryLemma effective;
            for (const auto& lemma : lemmatize(words[w], lex.dict)) {
                QueryLemma cand{lemma, lex.fl.find(lemma)};
                if (effective.text.empty() || rank_less(cand, effective)) effective = cand;
            }
            bool seen = std::any_of(part.lemmas.begin(), part.lemmas.end(),
                                    [&](const QueryLemma& l) { return l.text == effective.text; });
            if (!seen) part.lemmas.push_back(std::move(effective));
        }
        part.cls = classify_part(part.lemmas, cfg);
        part.anchor = choose_anchor(part.lemmas, part.cls, cfg);
        parts.push_back(std::move(part));
    }
    return parts;
}

void build_plan(QueryPart& part, const SchemaConfig& cfg, bool trad_only) {
    part.keys.clear();
    part.nsw_checks.clear();
    part.residual.clear();
    part.anchor_from_nsw = false;

    const QueryLemma& anchor = part.anchor_lemma();
    auto rest = [&]() {
        std::vector<QueryLemma> others;
        for (size_t i = 0; i < part.lemmas.size(); ++i) {
            if (i != part.anchor) others.push_back(part.lemmas[i]);
        }
        return others;
    };

    if (trad_only || part.lemmas.size() == 1) {
        part.residual = rest();
        return;
    }

    switch (part.cls) {
        case QueryClass::Q1: {
            auto others = rest();
            std::sort(others.begin(), others.end(), rank_less);
            for (size_t i = 0; i < others.size(); i += 2) {
                if (i + 1 < others.size()) {
                    part.keys.push_back(
                        IndexKey::fst3(*anchor.id, *others[i].id, *others[i + 1].id));
                } else {
                    part.keys.push_back(IndexKey::fst2(*anchor.id, *others[i].id));
                }
            }
            break;
        }
        case QueryClass::Q2: {
            part.anchor_from_nsw = true;
            for (const auto& l : rest()) {
                if (l.fl() < cfg.nsw_bound()) {
                    part.nsw_checks.push_back(*l.id);
                } else if (anchor.id && l.id && l.fl() < cfg.wv_w_hi() &&
                           key_admissible(IndexKey::wv(*l.id, *anchor.id), cfg)) {
                    part.keys.push_back(IndexKey::wv(*l.id, *anchor.id));
                } else {
                    part.residual.push_back(l);
                }
            }
            break;
        }
        case QueryClass::Q3:
        case QueryClass::Q4: {
            for (const auto& l : rest()) {
                if (anchor.id && l.id && key_admissible(IndexKey::wv(*anchor.id, *l.id), cfg)) {
                    part.keys.push_back(IndexKey::wv(*anchor.id, *l.id));
                } else {
                    part.residual.push_back(l);
                }
            }
            break;
        }
        case QueryClass::Q5:
            part.residual = rest();
            break;
    }
    std::sort(part.keys.begin(), part.keys.end());
    std::sort(part.nsw_checks.begin(), part.nsw_checks.end());
}

QueryPlan plan_query(const std::string& query, const Lexicon& lex, const SchemaConfig& cfg,
                     bool trad_only) {
    QueryPlan plan;
    plan.cfg = cfg;
    plan.trad_only = trad_only || !cfg.proximity;
    plan.words = tokenize(query);
    plan.parts = derive_parts(plan.words, lex, cfg);
    for (auto& part : plan.parts) build_plan(part, cfg, plan.trad_only);
    return plan;
}

std::string explain(const QueryPlan& plan, const Lexicon& lex) {
    std::ostringstream os;
    auto name = [&](LemmaId id) { return lex.fl.lemma(id); };
    os << "plan: " << plan.parts.size() << " part(s)"
       << (plan.trad_only ? ", traditional lists only" : "") << "\n";
    for (size_t i = 0; i < plan.parts.size(); ++i) {
        const auto& part = plan.parts[i];
        os << "part " << i << ": words [" << part.begin << "," << part.end << ") class "
           << to_string(part.cls) << " anchor " << part.anchor_lemma().text << "\n";
        for (const auto& key : part.keys) {
            os << "  " << family_name(key.family) << "(";
            auto c = key.components();
            for (size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << name(c[k]);
            os << ")\n";
        }
        if (part.anchor_from_nsw) {
            os << "  nsw{";
            for (size_t k = 0; k < part.nsw_checks.size(); ++k)
                os << (k ? "," : "") << name(part.nsw_checks[k]);
            os << "}\n";
        }
        for (const auto& r : part.residual)
            os << "  trad(" << r.text << (r.id ? "" : ", not indexed") << ")\n";
    }
    return os.str();
}

}  // namespace proxima
