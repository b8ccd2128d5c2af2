#include "proxima/store.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "proxima/varint.hpp"

namespace proxima {

namespace {

constexpr uint32_t kFormatVersion = 1;
constexpr char kManifestName[] = "manifest";
constexpr uint32_t kKeyFileMagic = 0x50584b44;  // "PXKD"

std::string gen_name(const char* stem, uint64_t generation) {
    return std::string(stem) + "." + std::to_string(generation);
}

nlohmann::json schema_to_json(const SchemaConfig& cfg) {
    return {
        {"kind", to_string(cfg.kind)},       {"max_distance", cfg.max_distance},
        {"sw_count", cfg.sw_count},          {"fu_count", cfg.fu_count},
        {"ehf_count", cfg.ehf_count},        {"hf_count", cfg.hf_count},
        {"proximity", cfg.proximity},
    };
}

SchemaConfig schema_from_json(const nlohmann::json& j) {
    SchemaConfig cfg;
    cfg.kind = j.at("kind").get<std::string>() == "new" ? SchemaKind::New : SchemaKind::Original;
    cfg.max_distance = j.at("max_distance").get<uint32_t>();
    cfg.sw_count = j.at("sw_count").get<uint32_t>();
    cfg.fu_count = j.at("fu_count").get<uint32_t>();
    cfg.ehf_count = j.at("ehf_count").get<uint32_t>();
    cfg.hf_count = j.at("hf_count").get<uint32_t>();
    cfg.proximity = j.at("proximity").get<bool>();
    return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("short write: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_key_directory(const std::filesystem::path& path,
                         const std::vector<const KeyDirectoryEntry*>& entries) {
    std::vector<uint8_t> buf;
    put_uvarint(buf, kKeyFileMagic);
    put_uvarint(buf, entries.size());
    for (const auto* e : entries) {
        put_uvarint(buf, static_cast<uint8_t>(e->key.family));
        put_uvarint(buf, e->key.arity);
        for (LemmaId x : e->key.components()) put_uvarint(buf, x);
        put_uvarint(buf, static_cast<uint8_t>(e->layout));
        put_uvarint(buf, e->posting_count);
        put_uvarint(buf, e->streams.size());
        for (const auto& s : e->streams) {
            put_uvarint(buf, s.file_id);
            put_uvarint(buf, s.offset);
            put_uvarint(buf, s.length);
        }
    }
    write_file(path, std::string(buf.begin(), buf.end()));
}

std::vector<KeyDirectoryEntry> read_key_directory(const std::filesystem::path& path) {
    std::string raw = read_file(path);
    ByteReader r(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(raw.data()), raw.size()));
    try {
        if (r.uvarint() != kKeyFileMagic) throw CorruptIndexError("bad key file magic: " + path.string());
        uint64_t n = r.uvarint();
        std::vector<KeyDirectoryEntry> entries;
        entries.reserve(n);
        for (uint64_t i = 0; i < n; ++i) {
            KeyDirectoryEntry e;
            e.key.family = static_cast<Family>(r.uvarint());
            e.key.arity = static_cast<uint8_t>(r.uvarint());
            if (e.key.arity < 1 || e.key.arity > 3)
                throw CorruptIndexError("bad key arity: " + path.string());
            for (uint8_t k = 0; k < e.key.arity; ++k)
                e.key.lemmas[k] = static_cast<LemmaId>(r.uvarint());
            e.layout = static_cast<StreamLayout>(r.uvarint());
            e.posting_count = r.uvarint();
            uint64_t ns = r.uvarint();
            for (uint64_t k = 0; k < ns; ++k) {
                StreamRef ref;
                ref.file_id = static_cast<uint32_t>(r.uvarint());
                ref.offset = r.uvarint();
                ref.length = r.uvarint();
                e.streams.push_back(ref);
            }
            entries.push_back(std::move(e));
        }
        return entries;
    } catch (const std::out_of_range&) {
        throw CorruptIndexError("truncated key file: " + path.string());
    }
}

}  // namespace

void ReadStats::merge(const ReadStats& other) {
    for (size_t i = 0; i < family.size(); ++i) {
        family[i].bytes_read += other.family[i].bytes_read;
        family[i].postings_decoded += other.family[i].postings_decoded;
        family[i].lists_read += other.family[i].lists_read;
    }
    nsw_bytes_read += other.nsw_bytes_read;
}

// ---------------------------------------------------------------------------
// IndexStore
// ---------------------------------------------------------------------------

IndexStore IndexStore::open(const std::filesystem::path& dir) {
    IndexStore store;
    store.dir_ = dir;
    auto manifest_path = dir / kManifestName;
    if (!std::filesystem::exists(manifest_path))
        throw IoError("no index at " + dir.string());

    nlohmann::json j = nlohmann::json::parse(read_file(manifest_path), nullptr, false);
    if (j.is_discarded()) throw CorruptIndexError("manifest is not valid JSON");
    try {
        Manifest& m = store.manifest_;
        m.format_version = j.at("format_version").get<uint32_t>();
        if (m.format_version != kFormatVersion)
            throw CorruptIndexError("unsupported index format version");
        m.generation = j.at("generation").get<uint64_t>();
        m.schema = schema_from_json(j.at("schema"));
        m.stream_split_threshold = j.at("stream_split_threshold").get<uint32_t>();
        m.doc_count = j.at("doc_count").get<uint64_t>();
        m.stream_files = j.at("stream_files").get<std::vector<std::string>>();
        auto keys = j.at("key_files");
        for (Family f : kAllFamilies)
            m.key_files[static_cast<size_t>(f)] = keys.at(family_name(f)).get<std::string>();
        m.fl_file = j.at("fl_file").get<std::string>();
        m.dict_file = j.at("dict_file").get<std::string>();
        m.docs_file = j.at("docs_file").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw CorruptIndexError(std::string("manifest missing fields: ") + e.what());
    }

    {
        std::ifstream in(dir / store.manifest_.fl_file);
        if (!in) throw CorruptIndexError("missing fl list file");
        store.lexicon_.fl = FlList::load(in);
    }
    {
        std::ifstream in(dir / store.manifest_.dict_file);
        if (!in) throw CorruptIndexError("missing dictionary file");
        store.lexicon_.dict = Dictionary::parse(in);
    }
    {
        std::ifstream in(dir / store.manifest_.docs_file);
        if (!in) throw CorruptIndexError("missing docs file");
        std::string line;
        while (std::getline(in, line)) store.doc_names_.push_back(line);
        if (store.doc_names_.size() != store.manifest_.doc_count)
            throw CorruptIndexError("docs file does not match manifest doc count");
    }
    for (Family f : kAllFamilies) {
        auto idx = static_cast<size_t>(f);
        store.dirs_[idx] = read_key_directory(dir / store.manifest_.key_files[idx]);
        if (!std::is_sorted(store.dirs_[idx].begin(), store.dirs_[idx].end(),
                            [](const auto& a, const auto& b) { return a.key < b.key; }))
            throw CorruptIndexError("key directory not in canonical order");
        for (const auto& e : store.dirs_[idx]) {
            for (const auto& s : e.streams) {
                if (s.file_id >= store.manifest_.stream_files.size())
                    throw CorruptIndexError("directory entry references unknown stream file");
            }
        }
    }
    return store;
}

const KeyDirectoryEntry* IndexStore::find_entry(const IndexKey& key) const {
    const auto& dir = dirs_[static_cast<size_t>(key.family)];
    auto it = std::lower_bound(dir.begin(), dir.end(), key,
                               [](const KeyDirectoryEntry& e, const IndexKey& k) {
                                   return e.key < k;
                               });
    if (it == dir.end() || !(it->key == key)) return nullptr;
    return &*it;
}

std::optional<EncodedList> IndexStore::get_streams(const IndexKey& key, bool want_nsw,
                                                   ReadStats* stats) const {
    const auto* entry = find_entry(key);
    if (!entry) return std::nullopt;

    auto nsw_idx = nsw_stream_index(key.family, entry->layout);
    EncodedList enc;
    enc.layout = entry->layout;
    for (size_t i = 0; i < entry->streams.size(); ++i) {
        bool is_nsw = nsw_idx && *nsw_idx == i;
        if (is_nsw && !want_nsw) continue;
        const auto& ref = entry->streams[i];
        std::ifstream in(dir_ / manifest_.stream_files.at(ref.file_id), std::ios::binary);
        if (!in) throw CorruptIndexError("missing stream file");
        in.seekg(static_cast<std::streamoff>(ref.offset));
        std::vector<uint8_t> buf(ref.length);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(ref.length));
        if (static_cast<uint64_t>(in.gcount()) != ref.length)
            throw CorruptIndexError("stream read out of bounds");
        if (stats) {
            stats->of(key.family).bytes_read += ref.length;
            if (is_nsw) stats->nsw_bytes_read += ref.length;
        }
        enc.streams.push_back(std::move(buf));
    }
    if (stats) stats->of(key.family).lists_read += 1;
    return enc;
}

StoreStats IndexStore::stats() const {
    StoreStats out;
    for (Family f : kAllFamilies) {
        auto& fs = out.of(f);
        for (const auto& e : dirs_[static_cast<size_t>(f)]) {
            fs.key_count += 1;
            fs.posting_count += e.posting_count;
            for (const auto& s : e.streams) fs.byte_size += s.length;
        }
    }
    return out;
}

void IndexStore::for_each_entry(Family f,
                                const std::function<void(const KeyDirectoryEntry&)>& fn) const {
    for (const auto& e : dirs_[static_cast<size_t>(f)]) fn(e);
}

// ---------------------------------------------------------------------------
// IndexWriter
// ---------------------------------------------------------------------------

IndexWriter::IndexWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    if (std::filesystem::exists(dir_ / kManifestName)) {
        auto prev = IndexStore::open(dir_);
        previous_ = prev.manifest();
        schema_ = previous_->schema;
        threshold_ = previous_->stream_split_threshold;
    }
}

void IndexWriter::put_posting_list(const IndexKey& key, const EncodedList& enc,
                                   uint64_t posting_count) {
    if (prepared_ || finished_) throw StoreError("writer is no longer accepting lists");
    if (!key_admissible(key, schema_))
        throw StoreError("key not admissible under the configured schema: " + key_repr(key));
    if (enc.streams.size() != stream_count(enc.layout))
        throw StoreError("stream count does not match layout: " + key_repr(key));
    if (pending_.count(key) || carried_.count(key))
        throw StoreError("duplicate key in commit batch: " + key_repr(key));
    pending_.emplace(key, PendingList{enc, posting_count});
}

void IndexWriter::carry_over(const KeyDirectoryEntry& entry) {
    if (prepared_ || finished_) throw StoreError("writer is no longer accepting lists");
    if (pending_.count(entry.key) || carried_.count(entry.key))
        throw StoreError("duplicate key in commit batch: " + key_repr(entry.key));
    carried_.emplace(entry.key, entry);
}

void IndexWriter::prepare_commit() {
    if (prepared_ || finished_) throw StoreError("commit already prepared");
    if (!lexicon_) throw StoreError("commit requires a lexicon");
    schema_.validate();

    next_ = Manifest{};
    next_.generation = previous_ ? previous_->generation + 1 : 1;
    next_.schema = schema_;
    next_.stream_split_threshold = threshold_;
    next_.doc_count = doc_names_.size();
    if (previous_) next_.stream_files = previous_->stream_files;

    const uint64_t gen = next_.generation;

    // Payload file for this generation. Written fully before the manifest
    // ever references it.
    std::string stream_name = gen_name("streams", gen);
    uint32_t file_id = static_cast<uint32_t>(next_.stream_files.size());
    {
        std::ofstream out(dir_ / stream_name, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write stream file");
        uint64_t offset = 0;
        for (auto& [key, list] : pending_) {
            KeyDirectoryEntry e;
            e.key = key;
            e.layout = list.enc.layout;
            e.posting_count = list.posting_count;
            for (const auto& s : list.enc.streams) {
                out.write(reinterpret_cast<const char*>(s.data()),
                          static_cast<std::streamsize>(s.size()));
                e.streams.push_back({file_id, offset, s.size()});
                offset += s.size();
            }
            carried_.emplace(key, std::move(e));  // merged view for the directory below
        }
        out.flush();
        if (!out) throw IoError("short write on stream file");
    }
    next_.stream_files.push_back(stream_name);
    pending_.clear();

    for (Family f : kAllFamilies) {
        std::vector<const KeyDirectoryEntry*> entries;
        for (const auto& [key, e] : carried_) {
            if (key.family == f) entries.push_back(&e);
        }
        std::string name = gen_name((std::string("keys.") + family_name(f)).c_str(), gen);
        write_key_directory(dir_ / name, entries);
        next_.key_files[static_cast<size_t>(f)] = name;
    }

    next_.fl_file = gen_name("fl_list", gen);
    {
        std::ofstream out(dir_ / next_.fl_file);
        if (!out) throw IoError("cannot write fl list");
        lexicon_->fl.save(out);
    }
    next_.dict_file = gen_name("dict", gen);
    {
        std::ofstream out(dir_ / next_.dict_file);
        if (!out) throw IoError("cannot write dictionary");
        lexicon_->dict.save(out);
    }
    next_.docs_file = gen_name("docs", gen);
    {
        std::ofstream out(dir_ / next_.docs_file);
        if (!out) throw IoError("cannot write docs file");
        for (const auto& name : doc_names_) out << name << '\n';
    }

    nlohmann::json j{
        {"format_version", kFormatVersion},
        {"generation", next_.generation},
        {"schema", schema_to_json(next_.schema)},
        {"stream_split_threshold", next_.stream_split_threshold},
        {"doc_count", next_.doc_count},
        {"stream_files", next_.stream_files},
        {"fl_file", next_.fl_file},
        {"dict_file", next_.dict_file},
        {"docs_file", next_.docs_file},
    };
    nlohmann::json keys;
    for (Family f : kAllFamilies)
        keys[family_name(f)] = next_.key_files[static_cast<size_t>(f)];
    j["key_files"] = keys;
    write_file(dir_ / (std::string(kManifestName) + ".tmp"), j.dump(2));
    prepared_ = true;
}

void IndexWriter::publish() {
    if (!prepared_) throw StoreError("publish without prepare_commit");
    std::filesystem::rename(dir_ / (std::string(kManifestName) + ".tmp"), dir_ / kManifestName);
    prepared_ = false;
    finished_ = true;
}

}  // namespace proxima
