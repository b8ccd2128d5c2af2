#include "proxima/document.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "proxima/errors.hpp"

namespace proxima {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (alnum) {
            cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32)
                                               : static_cast<char>(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<Document> load_corpus_jsonl(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open corpus file: " + file.string());
    std::vector<Document> docs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("text"))
            throw IoError(file.string() + ":" + std::to_string(lineno) +
                          ": expected {\"id\":..., \"text\":...}");
        docs.push_back({j["id"].get<std::string>(), j["text"].get<std::string>()});
    }
    return docs;
}

std::vector<Document> load_corpus_dir(const std::filesystem::path& dir) {
    std::vector<Document> docs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path());
        if (!in) throw IoError("cannot open document: " + entry.path().string());
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        docs.push_back({entry.path().filename().string(), std::move(text)});
    }
    std::sort(docs.begin(), docs.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
    if (std::filesystem::is_directory(path)) return load_corpus_dir(path);
    if (std::filesystem::is_regular_file(path)) return load_corpus_jsonl(path);
    throw IoError("no such corpus: " + path.string());
}

void save_corpus_jsonl(const std::vector<Document>& docs, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write corpus file: " + file.string());
    for (const auto& d : docs) {
        nlohmann::json j{{"id", d.id}, {"text", d.text}};
        out << j.dump() << "\n";
    }
    if (!out) throw IoError("short write: " + file.string());
}

}  // namespace proxima
