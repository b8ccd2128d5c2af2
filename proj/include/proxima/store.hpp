#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proxima/codec.hpp"
#include "proxima/errors.hpp"
#include "proxima/lexicon.hpp"
#include "proxima/postings.hpp"

namespace proxima {

struct StreamRef {
    uint32_t file_id = 0;  // index into Manifest::stream_files
    uint64_t offset = 0;
    uint64_t length = 0;
};

struct KeyDirectoryEntry {
    IndexKey key;
    StreamLayout layout = StreamLayout::OneStream;
    uint64_t posting_count = 0;
    std::vector<StreamRef> streams;
};

struct FamilyStats {
    uint64_t key_count = 0;
    uint64_t posting_count = 0;
    uint64_t byte_size = 0;
};

struct StoreStats {
    std::array<FamilyStats, 4> family{};

    const FamilyStats& of(Family f) const { return family[static_cast<size_t>(f)]; }
    FamilyStats& of(Family f) { return family[static_cast<size_t>(f)]; }
    uint64_t total_bytes() const {
        uint64_t n = 0;
        for (const auto& fs : family) n += fs.byte_size;
        return n;
    }
};

// Per-query read accounting, the basis of the data-read-size reports.
struct ReadStats {
    struct Counter {
        uint64_t bytes_read = 0;
        uint64_t postings_decoded = 0;
        uint64_t lists_read = 0;
    };
    std::array<Counter, 4> family{};
    uint64_t nsw_bytes_read = 0;  // subset of family[TradNsw].bytes_read

    const Counter& of(Family f) const { return family[static_cast<size_t>(f)]; }
    Counter& of(Family f) { return family[static_cast<size_t>(f)]; }
    uint64_t total_bytes() const {
        uint64_t n = 0;
        for (const auto& c : family) n += c.bytes_read;
        return n;
    }
    uint64_t total_postings() const {
        uint64_t n = 0;
        for (const auto& c : family) n += c.postings_decoded;
        return n;
    }
    void merge(const ReadStats& other);
};

struct Manifest {
    uint32_t format_version = 1;
    uint64_t generation = 0;
    SchemaConfig schema;
    uint32_t stream_split_threshold = 1024;
    uint64_t doc_count = 0;
    std::vector<std::string> stream_files;          // file_id -> name
    std::array<std::string, 4> key_files;           // per family
    std::string fl_file, dict_file, docs_file;
};

// Read side. One manifest generation; any number of concurrent readers.
class IndexStore {
public:
    static IndexStore open(const std::filesystem::path& dir);

    const std::filesystem::path& dir() const { return dir_; }
    const Manifest& manifest() const { return manifest_; }
    const SchemaConfig& schema() const { return manifest_.schema; }
    const Lexicon& lexicon() const { return lexicon_; }
    uint64_t doc_count() const { return manifest_.doc_count; }
    const std::string& doc_name(uint32_t ordinal) const { return doc_names_.at(ordinal); }
    const std::vector<std::string>& doc_names() const { return doc_names_; }

    const KeyDirectoryEntry* find_entry(const IndexKey& key) const;

    // Fetches a key's payload. With want_nsw=false the NSW stream's bytes
    // are never read; the returned stream vector is simply shorter.
    std::optional<EncodedList> get_streams(const IndexKey& key, bool want_nsw,
                                           ReadStats* stats = nullptr) const;

    StoreStats stats() const;

    void for_each_entry(Family f,
                        const std::function<void(const KeyDirectoryEntry&)>& fn) const;

private:
    std::filesystem::path dir_;
    Manifest manifest_;
    Lexicon lexicon_;
    std::vector<std::string> doc_names_;
    std::array<std::vector<KeyDirectoryEntry>, 4> dirs_;  // sorted by key
};

// Write side. Collects a full directory for the next generation; commit is
// a two-phase operation whose publish step is a single atomic manifest swap,
// so readers only ever observe committed generations.
class IndexWriter {
public:
    explicit IndexWriter(std::filesystem::path dir);

    bool has_previous() const { return previous_.has_value(); }
    const Manifest& previous_manifest() const { return *previous_; }

    void set_schema(const SchemaConfig& cfg) { schema_ = cfg; }
    void set_threshold(uint32_t t) { threshold_ = t; }
    void set_lexicon(const Lexicon& lex) { lexicon_ = &lex; }
    void set_doc_names(std::vector<std::string> names) { doc_names_ = std::move(names); }

    // Rejects keys failing schema admission and duplicate keys in the batch.
    void put_posting_list(const IndexKey& key, const EncodedList& enc, uint64_t posting_count);
    // Keeps an entry whose bytes already live in a committed stream file.
    void carry_over(const KeyDirectoryEntry& entry);

    void prepare_commit();  // writes every file of the new generation
    void publish();         // atomic manifest rename; the commit point
    void commit() {
        prepare_commit();
        publish();
    }

private:
    std::filesystem::path dir_;
    std::optional<Manifest> previous_;
    SchemaConfig schema_;
    uint32_t threshold_ = 1024;
    const Lexicon* lexicon_ = nullptr;
    std::vector<std::string> doc_names_;

    struct PendingList {
        EncodedList enc;
        uint64_t posting_count = 0;
    };
    std::map<IndexKey, PendingList> pending_;
    std::map<IndexKey, KeyDirectoryEntry> carried_;
    bool prepared_ = false;
    bool finished_ = false;  // one commit per writer
    Manifest next_;
};

}  // namespace proxima
