#include "proxima/postings.hpp"

#include <algorithm>
#include <sstream>

namespace proxima {

const char* family_name(Family f) {
    switch (f) {
        case Family::Trad: return "trad";
        case Family::TradNsw: return "trad_nsw";
        case Family::Wv: return "wv";
        case Family::Fst: return "fst";
    }
    return "?";
}

std::optional<size_t> nsw_stream_index(Family f, StreamLayout l) {
    if (f != Family::TradNsw) return std::nullopt;
    switch (l) {
        case StreamLayout::TwoStreams: return 1;
        case StreamLayout::ThreeStreams: return 2;
        case StreamLayout::OneStream: return std::nullopt;
    }
    return std::nullopt;
}

IndexKey IndexKey::trad(LemmaId x) { return {Family::Trad, 1, {x, 0, 0}}; }

IndexKey IndexKey::trad_nsw(LemmaId x) { return {Family::TradNsw, 1, {x, 0, 0}}; }

IndexKey IndexKey::wv(LemmaId a, LemmaId b) {
    if (b < a) std::swap(a, b);
    return {Family::Wv, 2, {a, b, 0}};
}

IndexKey IndexKey::fst2(LemmaId f, LemmaId s) {
    if (s < f) std::swap(f, s);
    return {Family::Fst, 2, {f, s, 0}};
}

IndexKey IndexKey::fst3(LemmaId f, LemmaId s, LemmaId t) {
    std::array<LemmaId, 3> c{f, s, t};
    std::sort(c.begin(), c.end());
    return {Family::Fst, 3, c};
}

std::strong_ordering operator<=>(const IndexKey& a, const IndexKey& b) {
    if (a.family != b.family) return a.family <=> b.family;
    auto ac = a.components(), bc = b.components();
    size_t n = std::min(ac.size(), bc.size());
    for (size_t i = 0; i < n; ++i) {
        if (ac[i] != bc[i]) return ac[i] <=> bc[i];
    }
    return ac.size() <=> bc.size();
}

bool key_admissible(const IndexKey& key, const SchemaConfig& cfg) {
    auto c = key.components();
    if (c.empty() || c.size() > 3) return false;
    if (!std::is_sorted(c.begin(), c.end())) return false;
    switch (key.family) {
        case Family::Trad:
            return c.size() == 1;
        case Family::TradNsw:
            return c.size() == 1 && c[0] >= cfg.nsw_bound();
        case Family::Wv:
            return c.size() == 2 && c[0] >= cfg.wv_lo() && c[0] < cfg.wv_w_hi() &&
                   c[1] >= cfg.wv_lo();
        case Family::Fst: {
            if (c.size() < 2) return false;
            for (LemmaId x : c) {
                if (x >= cfg.fst_bound()) return false;
            }
            return true;
        }
    }
    return false;
}

std::string key_repr(const IndexKey& key) {
    std::ostringstream os;
    os << family_name(key.family) << '(';
    auto c = key.components();
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
    }
    os << ')';
    return os.str();
}

}  // namespace proxima
