#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "proxima/document.hpp"
#include "proxima/schema.hpp"

namespace proxima {

// Word -> lemma set dictionary. Words absent from it lemmatize to themselves.
class Dictionary {
public:
    Dictionary() = default;

    static Dictionary load_file(const std::filesystem::path& path);
    static Dictionary parse(std::istream& in);

    void add(const std::string& word, std::vector<std::string> lemmas);
    const std::vector<std::string>* find(const std::string& word) const;
    size_t size() const { return entries_.size(); }

    // One line per word: word<TAB>lemma1,lemma2  (words in ascending order).
    void save(std::ostream& out) const;

private:
    std::map<std::string, std::vector<std::string>> entries_;
};

// Lemmas of a token: the dictionary entry, or the token itself when unknown.
std::vector<std::string> lemmatize(const std::string& word, const Dictionary& dict);

// All lemmas ranked by decreasing corpus occurrence count; a lemma's id is
// its rank (FL-number). Ties in count break by ascending lemma string, so
// the ranking is reproducible for a given corpus.
class FlList {
public:
    FlList() = default;

    // `lemmas` already in rank order; `counts` parallel (may be empty).
    static FlList from_ranked(std::vector<std::string> lemmas, std::vector<uint64_t> counts = {});

    std::optional<LemmaId> find(const std::string& lemma) const;
    uint32_t size() const { return static_cast<uint32_t>(lemmas_.size()); }
    bool empty() const { return lemmas_.empty(); }
    const std::string& lemma(LemmaId fl) const { return lemmas_.at(fl); }
    uint64_t frequency(LemmaId fl) const { return counts_.at(fl); }

    // Appends an unseen lemma at the tail (used by incremental additions;
    // existing ranks never move). Returns the lemma's id either way.
    LemmaId intern(const std::string& lemma, uint64_t count = 0);
    void bump(LemmaId fl, uint64_t n) { counts_.at(fl) += n; }

    void save(std::ostream& out) const;  // lemma<TAB>count per line, rank order
    static FlList load(std::istream& in);

private:
    std::vector<std::string> lemmas_;
    std::vector<uint64_t> counts_;
    std::unordered_map<std::string, LemmaId> index_;
};

// Counts one occurrence per lemma of every token (a token with several
// lemmas contributes to each of them), then ranks.
FlList build_fl_list(const std::vector<Document>& corpus, const Dictionary& dict);

// Dictionary + FL-list. Immutable once an index is built; the interning
// paths exist only for the append pipeline.
struct Lexicon {
    Dictionary dict;
    FlList fl;

    // Ids of a word's lemmas that occur in the corpus (sorted, unique).
    std::vector<LemmaId> lookup(const std::string& word) const;
    // Same, registering missing lemmas at the FL tail.
    std::vector<LemmaId> intern(const std::string& word);
};

// Per position: sorted unique ids of the lemmas of the word at that position.
using DocTape = std::vector<std::vector<LemmaId>>;

DocTape make_tape(std::string_view text, const Lexicon& lex);
DocTape make_tape_interning(std::string_view text, Lexicon& lex);

}  // namespace proxima
