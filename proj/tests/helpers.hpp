#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "proxima/builder.hpp"
#include "proxima/lexicon.hpp"

namespace proxima::testing {

// Unique scratch directory, removed on scope exit.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0; i < 10000; ++i) {
            auto candidate = base / ("proxima_" + tag + "_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp dir");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

// Lexicon whose FL order is exactly `ranked`; words self-lemmatize.
inline Lexicon ranked_lexicon(std::vector<std::string> ranked) {
    Lexicon lex;
    std::vector<uint64_t> counts;
    for (size_t i = 0; i < ranked.size(); ++i)
        counts.push_back(ranked.size() - i);  // strictly decreasing
    lex.fl = FlList::from_ranked(std::move(ranked), std::move(counts));
    return lex;
}

// Lexicon with `n` filler lemmas rank 0..n-1, plus the given words pinned at
// requested ranks (each entry replaces the filler at that rank).
inline Lexicon pinned_lexicon(uint32_t n, const std::vector<std::pair<std::string, uint32_t>>& pins) {
    std::vector<std::string> ranked(n);
    for (uint32_t i = 0; i < n; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "x%05u", i);
        ranked[i] = buf;
    }
    for (const auto& [word, rank] : pins) ranked.at(rank) = word;
    return ranked_lexicon(std::move(ranked));
}

}  // namespace proxima::testing
