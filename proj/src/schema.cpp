#include "proxima/schema.hpp"

#include <stdexcept>

namespace proxima {

void SchemaConfig::validate() const {
    if (max_distance < 1) throw std::invalid_argument("max_distance must be >= 1");
}

LemmaType lemma_type(uint32_t fl, const SchemaConfig& cfg) {
    if (cfg.kind == SchemaKind::Original) {
        if (fl < cfg.sw_count) return LemmaType::Stop;
        if (fl < cfg.sw_count + cfg.fu_count) return LemmaType::FrequentlyUsed;
        return LemmaType::Ordinary;
    }
    if (fl < cfg.ehf_count) return LemmaType::ExtremeHighFreq;
    if (fl < cfg.ehf_count + cfg.hf_count) return LemmaType::HighFreq;
    if (fl < cfg.ehf_count + cfg.hf_count + cfg.fu_count) return LemmaType::FrequentlyUsed;
    return LemmaType::Ordinary;
}

const char* to_string(LemmaType t) {
    switch (t) {
        case LemmaType::Stop: return "stop";
        case LemmaType::ExtremeHighFreq: return "ehf";
        case LemmaType::HighFreq: return "hf";
        case LemmaType::FrequentlyUsed: return "fu";
        case LemmaType::Ordinary: return "ordinary";
    }
    return "?";
}

const char* to_string(SchemaKind k) {
    return k == SchemaKind::Original ? "original" : "new";
}

}  // namespace proxima
