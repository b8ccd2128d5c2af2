#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace proxima {

struct Document {
    std::string id;
    std::string text;
};

// ASCII tokenizer: alphanumeric runs, case-folded. Positions are the ordinal
// token numbers starting at 0.
std::vector<std::string> tokenize(std::string_view text);

// Corpus readers. JSONL: one {"id": ..., "text": ...} object per line.
// Directory mode: every regular file is a document, the filename is its id.
std::vector<Document> load_corpus_jsonl(const std::filesystem::path& file);
std::vector<Document> load_corpus_dir(const std::filesystem::path& dir);
std::vector<Document> load_corpus(const std::filesystem::path& path);

void save_corpus_jsonl(const std::vector<Document>& docs, const std::filesystem::path& file);

}  // namespace proxima
