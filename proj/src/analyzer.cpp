#include "proxima/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace proxima {

double ppg(const PpgInput& input) {
    if (input.ranks.size() != input.is_stop.size())
        throw std::invalid_argument("ppg: stop flags must parallel ranks");
    for (uint64_t q : input.ranks) {
        if (q < 1) throw std::invalid_argument("ppg: ranks are 1-based");
    }
    bool any_stop = false, any_nonstop = false;
    for (bool s : input.is_stop) (s ? any_stop : any_nonstop) = true;
    if (!any_stop || !any_nonstop) return 1.0;

    if (input.main_index >= input.ranks.size() || input.is_stop[input.main_index])
        throw std::invalid_argument("ppg: main lemma must be a non-stop member");

    double numerator = 0.0, denominator = 0.0;
    for (size_t i = 0; i < input.ranks.size(); ++i) {
        double term = 1.0 / static_cast<double>(input.ranks[i]);
        numerator += term;
        if (!input.is_stop[i]) denominator += term;
    }
    denominator += (1.0 / static_cast<double>(input.ranks[input.main_index])) *
                   (input.nsw_factor - 1.0);
    return numerator / denominator;
}

namespace {

// One rank + stop flag per query word, via the word's most frequent lemma.
PpgInput ppg_input_of(const std::string& query, const Lexicon& lex, const SchemaConfig& cfg,
                      double nsw_factor) {
    PpgInput input;
    input.nsw_factor = nsw_factor;
    for (const auto& word : tokenize(query)) {
        uint32_t fl = kUnrankedFl;
        for (const auto& lemma : lemmatize(word, lex.dict)) {
            if (auto id = lex.fl.find(lemma)) fl = std::min(fl, *id);
        }
        uint64_t rank = fl == kUnrankedFl ? static_cast<uint64_t>(lex.fl.size()) + 1
                                          : static_cast<uint64_t>(fl) + 1;
        input.ranks.push_back(rank);
        input.is_stop.push_back(fl < cfg.nsw_bound());
    }
    // Main lemma: the rarest non-stop member, as the planner would anchor.
    size_t main = 0;
    uint64_t best = 0;
    for (size_t i = 0; i < input.ranks.size(); ++i) {
        if (!input.is_stop[i] && input.ranks[i] >= best) {
            best = input.ranks[i];
            main = i;
        }
    }
    input.main_index = main;
    return input;
}

}  // namespace

double ppg_of_query(const std::string& query, const Lexicon& lex, const SchemaConfig& cfg,
                    double nsw_factor) {
    auto input = ppg_input_of(query, lex, cfg, nsw_factor);
    if (input.ranks.empty()) return 1.0;
    return ppg(input);
}

double appg(const std::vector<std::string>& workload, const Lexicon& lex,
            const SchemaConfig& cfg, double nsw_factor) {
    if (workload.empty()) throw std::invalid_argument("appg: empty workload");
    double sum = 0.0;
    for (const auto& query : workload) sum += ppg_of_query(query, lex, cfg, nsw_factor);
    return sum / static_cast<double>(workload.size());
}

std::optional<uint32_t> query_min_fl(const std::string& query, const Lexicon& lex) {
    std::optional<uint32_t> min_fl;
    for (const auto& word : tokenize(query)) {
        uint32_t fl = kUnrankedFl;
        for (const auto& lemma : lemmatize(word, lex.dict)) {
            if (auto id = lex.fl.find(lemma)) fl = std::min(fl, *id);
        }
        if (!min_fl || fl < *min_fl) min_fl = fl;
    }
    return min_fl;
}

BinReport bin_by_min_fl(const std::vector<uint32_t>& min_fls, const std::vector<double>& metric,
                        uint32_t step) {
    if (min_fls.size() != metric.size())
        throw std::invalid_argument("bin_by_min_fl: metric must parallel min_fls");
    if (step == 0) throw std::invalid_argument("bin_by_min_fl: step must be positive");
    for (uint32_t fl : min_fls) {
        if (fl == kUnrankedFl)
            throw std::invalid_argument("bin_by_min_fl: query has no ranked lemma");
    }

    BinReport report;
    report.step = step;
    uint32_t max_bin = 0;
    for (uint32_t fl : min_fls) max_bin = std::max(max_bin, fl / step);
    if (min_fls.empty()) return report;

    report.bins.resize(max_bin + 1);
    std::vector<double> sums(max_bin + 1, 0.0);
    for (uint32_t b = 0; b <= max_bin; ++b) report.bins[b].index = b;
    for (size_t i = 0; i < min_fls.size(); ++i) {
        uint32_t b = min_fls[i] / step;
        report.bins[b].count += 1;
        sums[b] += metric[i];
    }
    for (uint32_t b = 0; b <= max_bin; ++b) {
        if (report.bins[b].count)
            report.bins[b].mean = sums[b] / static_cast<double>(report.bins[b].count);
    }
    return report;
}

std::string gen_token(uint32_t rank_1based, uint32_t vocab_size) {
    uint32_t width = 1;
    for (uint32_t v = vocab_size; v >= 10; v /= 10) ++width;
    std::string digits = std::to_string(rank_1based);
    std::string out = "t";
    out.append(width > digits.size() ? width - digits.size() : 0, '0');
    out += digits;
    return out;
}

std::vector<Document> gen_corpus(const GenParams& params) {
    if (params.vocab_size == 0 || params.doc_count == 0 || params.doc_len_min == 0 ||
        params.doc_len_min > params.doc_len_max || params.exponent <= 0.0)
        throw std::invalid_argument("gen_corpus: bad parameters");

    // Inverse-CDF sampling over explicit cumulative weights; mt19937_64 raw
    // output only, so streams are identical across standard libraries.
    std::vector<double> cdf(params.vocab_size);
    double total = 0.0;
    for (uint32_t k = 1; k <= params.vocab_size; ++k) {
        total += 1.0 / std::pow(static_cast<double>(k), params.exponent);
        cdf[k - 1] = total;
    }
    for (double& c : cdf) c /= total;

    std::mt19937_64 rng(params.seed);
    auto uniform01 = [&]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    std::vector<Document> docs;
    docs.reserve(params.doc_count);
    const uint32_t span = params.doc_len_max - params.doc_len_min + 1;
    for (uint32_t d = 0; d < params.doc_count; ++d) {
        uint32_t len = params.doc_len_min + static_cast<uint32_t>(rng() % span);
        std::string text;
        for (uint32_t i = 0; i < len; ++i) {
            double u = uniform01();
            auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            uint32_t rank = static_cast<uint32_t>(it - cdf.begin()) + 1;
            if (rank > params.vocab_size) rank = params.vocab_size;
            if (i) text += ' ';
            text += gen_token(rank, params.vocab_size);
        }
        docs.push_back({"g" + std::to_string(d), std::move(text)});
    }
    return docs;
}

}  // namespace proxima
