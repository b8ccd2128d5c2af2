#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "proxima/lexicon.hpp"
#include "proxima/postings.hpp"
#include "proxima/store.hpp"

namespace proxima {

struct BuildOptions {
    uint32_t stream_split_threshold = 1024;
};

struct BuildReport {
    StoreStats stats;
    uint64_t documents = 0;
    uint64_t tokens = 0;
};

// Posting contributions of one document, keyed by index key. Exposed so the
// per-document output can be verified against window enumeration directly.
struct DocPostings {
    struct NswList {
        std::vector<TradPosting> postings;
        std::vector<NswRecord> records;
    };
    std::map<IndexKey, std::vector<TradPosting>> trad;
    std::map<IndexKey, NswList> trad_nsw;
    std::map<IndexKey, std::vector<PairPosting>> wv;
    std::map<IndexKey, std::vector<TriplePosting>> fst;
};

DocPostings index_document(uint32_t doc, const DocTape& tape, const SchemaConfig& cfg);

// Single-scan builder. Buffers per-key lists in memory (desk-scale corpora),
// merges with a previously committed generation on append, and commits
// through IndexWriter.
class IndexBuilder {
public:
    // Fresh index: ranks the corpus first, then expects the same documents
    // via add_document.
    static IndexBuilder for_new_index(const std::vector<Document>& corpus,
                                      const Dictionary& dict, const SchemaConfig& cfg,
                                      BuildOptions opts = {});
    // Append: continues an existing index. New lemmas join the FL tail;
    // committed ranks never move.
    static IndexBuilder for_append(const IndexStore& store, BuildOptions opts = {});
    // Fresh index over an already-frozen lexicon (rebuilds, fixtures).
    static IndexBuilder with_lexicon(Lexicon lex, const SchemaConfig& cfg, BuildOptions opts = {});

    void add_document(const Document& doc);

    const Lexicon& lexicon() const { return lexicon_; }
    const SchemaConfig& schema() const { return cfg_; }
    uint64_t document_count() const { return doc_names_.size(); }

    BuildReport commit_to(const std::filesystem::path& index_dir);

private:
    IndexBuilder(Lexicon lex, SchemaConfig cfg, BuildOptions opts);

    Lexicon lexicon_;
    SchemaConfig cfg_;
    BuildOptions opts_;
    uint32_t base_docs_ = 0;  // ordinals below this belong to prior commits
    std::vector<std::string> doc_names_;
    uint64_t tokens_ = 0;
    DocPostings acc_;
    const IndexStore* append_base_ = nullptr;
};

// Convenience pipeline: rank, scan, commit.
BuildReport build_all(const std::vector<Document>& corpus, const Dictionary& dict,
                      const SchemaConfig& cfg, const std::filesystem::path& index_dir,
                      BuildOptions opts = {});

}  // namespace proxima
