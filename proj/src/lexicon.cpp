#include "proxima/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "proxima/errors.hpp"

namespace proxima {

// --------------------------------------------------------------------------
// Dictionary
// --------------------------------------------------------------------------

Dictionary Dictionary::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dictionary: " + path.string());
    return parse(in);
}

Dictionary Dictionary::parse(std::istream& in) {
    Dictionary dict;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        std::string word = line.substr(0, tab);
        std::vector<std::string> lemmas;
        std::string rest = line.substr(tab + 1);
        size_t start = 0;
        while (start <= rest.size()) {
            size_t comma = rest.find(',', start);
            std::string lemma = rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                              : comma - start);
            if (!lemma.empty()) lemmas.push_back(std::move(lemma));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!word.empty() && !lemmas.empty()) dict.add(word, std::move(lemmas));
    }
    return dict;
}

void Dictionary::add(const std::string& word, std::vector<std::string> lemmas) {
    std::sort(lemmas.begin(), lemmas.end());
    lemmas.erase(std::unique(lemmas.begin(), lemmas.end()), lemmas.end());
    entries_[word] = std::move(lemmas);
}

const std::vector<std::string>* Dictionary::find(const std::string& word) const {
    auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
}

void Dictionary::save(std::ostream& out) const {
    for (const auto& [word, lemmas] : entries_) {
        out << word << '\t';
        for (size_t i = 0; i < lemmas.size(); ++i) {
            if (i) out << ',';
            out << lemmas[i];
        }
        out << '\n';
    }
}

std::vector<std::string> lemmatize(const std::string& word, const Dictionary& dict) {
    if (const auto* lemmas = dict.find(word)) return *lemmas;
    return {word};
}

// --------------------------------------------------------------------------
// FlList
// --------------------------------------------------------------------------

FlList FlList::from_ranked(std::vector<std::string> lemmas, std::vector<uint64_t> counts) {
    FlList fl;
    if (counts.empty()) counts.assign(lemmas.size(), 0);
    if (counts.size() != lemmas.size())
        throw std::invalid_argument("fl list: counts must parallel lemmas");
    fl.lemmas_ = std::move(lemmas);
    fl.counts_ = std::move(counts);
    fl.index_.reserve(fl.lemmas_.size());
    for (uint32_t i = 0; i < fl.lemmas_.size(); ++i) {
        auto [_, inserted] = fl.index_.emplace(fl.lemmas_[i], i);
        if (!inserted) throw std::invalid_argument("fl list: duplicate lemma " + fl.lemmas_[i]);
    }
    return fl;
}

std::optional<LemmaId> FlList::find(const std::string& lemma) const {
    auto it = index_.find(lemma);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

LemmaId FlList::intern(const std::string& lemma, uint64_t count) {
    auto it = index_.find(lemma);
    if (it != index_.end()) return it->second;
    LemmaId id = static_cast<LemmaId>(lemmas_.size());
    lemmas_.push_back(lemma);
    counts_.push_back(count);
    index_.emplace(lemma, id);
    return id;
}

void FlList::save(std::ostream& out) const {
    for (size_t i = 0; i < lemmas_.size(); ++i) out << lemmas_[i] << '\t' << counts_[i] << '\n';
}

FlList FlList::load(std::istream& in) {
    std::vector<std::string> lemmas;
    std::vector<uint64_t> counts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw CorruptIndexError("fl list: malformed line");
        lemmas.push_back(line.substr(0, tab));
        counts.push_back(std::stoull(line.substr(tab + 1)));
    }
    return from_ranked(std::move(lemmas), std::move(counts));
}

FlList build_fl_list(const std::vector<Document>& corpus, const Dictionary& dict) {
    std::unordered_map<std::string, uint64_t> counts;
    for (const auto& doc : corpus) {
        for (const auto& word : tokenize(doc.text)) {
            for (const auto& lemma : lemmatize(word, dict)) ++counts[lemma];
        }
    }
    std::vector<std::pair<std::string, uint64_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> lemmas;
    std::vector<uint64_t> freqs;
    lemmas.reserve(ranked.size());
    freqs.reserve(ranked.size());
    for (auto& [lemma, n] : ranked) {
        lemmas.push_back(std::move(lemma));
        freqs.push_back(n);
    }
    return FlList::from_ranked(std::move(lemmas), std::move(freqs));
}

// --------------------------------------------------------------------------
// Lexicon
// --------------------------------------------------------------------------

std::vector<LemmaId> Lexicon::lookup(const std::string& word) const {
    std::vector<LemmaId> ids;
    for (const auto& lemma : lemmatize(word, dict)) {
        if (auto id = fl.find(lemma)) ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::vector<LemmaId> Lexicon::intern(const std::string& word) {
    std::vector<LemmaId> ids;
    for (const auto& lemma : lemmatize(word, dict)) ids.push_back(fl.intern(lemma));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

DocTape make_tape(std::string_view text, const Lexicon& lex) {
    DocTape tape;
    for (const auto& word : tokenize(text)) tape.push_back(lex.lookup(word));
    return tape;
}

DocTape make_tape_interning(std::string_view text, Lexicon& lex) {
    DocTape tape;
    for (const auto& word : tokenize(text)) {
        auto ids = lex.intern(word);
        for (LemmaId id : ids) lex.fl.bump(id, 1);
        tape.push_back(std::move(ids));
    }
    return tape;
}

}  // namespace proxima
