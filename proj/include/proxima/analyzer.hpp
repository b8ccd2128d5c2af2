#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxima/lexicon.hpp"
#include "proxima/schema.hpp"

namespace proxima {

// Planned performance gain: the analytic ratio of postings a traditional
// plan reads to what an NSW-assisted plan reads for the same query.
//
//   PPG = (sum over all i of 1/q_i)
//       / (sum over non-stop i of 1/q_i + (1/q_main) * (nsw_factor - 1))
//
// q_i are 1-based frequency ranks. Queries without both a stop and a
// non-stop member have PPG = 1 by definition.
struct PpgInput {
    std::vector<uint64_t> ranks;   // 1-based
    std::vector<bool> is_stop;     // parallel to ranks
    size_t main_index = 0;         // must point at a non-stop member
    double nsw_factor = 4.5;
};

double ppg(const PpgInput& input);  // throws std::invalid_argument on rank < 1

// Per-query PPG of a text workload under `cfg`'s stop band; the main lemma
// is the rarest non-stop one, matching the planner's anchor rule.
double ppg_of_query(const std::string& query, const Lexicon& lex, const SchemaConfig& cfg,
                    double nsw_factor = 4.5);

double appg(const std::vector<std::string>& workload, const Lexicon& lex,
            const SchemaConfig& cfg, double nsw_factor = 4.5);

// Minimum FL-number over a query's lemmas; empty for queries with no tokens.
std::optional<uint32_t> query_min_fl(const std::string& query, const Lexicon& lex);

struct Bin {
    uint32_t index = 0;  // covers min-fl in [index*step, (index+1)*step)
    uint64_t count = 0;
    double mean = 0.0;   // meaningless when count == 0
};

struct BinReport {
    uint32_t step = 100;
    std::vector<Bin> bins;  // contiguous from 0 to the last occupied bin
};

BinReport bin_by_min_fl(const std::vector<uint32_t>& min_fls,
                        const std::vector<double>& metric, uint32_t step = 100);

// Deterministic Zipf-distributed corpus. Token k (1-based) is drawn with
// probability proportional to 1/k^exponent; token strings are zero-padded
// so rank order and string order coincide.
struct GenParams {
    uint64_t seed = 1;
    uint32_t vocab_size = 1000;
    uint32_t doc_count = 100;
    uint32_t doc_len_min = 100;
    uint32_t doc_len_max = 200;
    double exponent = 1.0;
};

std::vector<Document> gen_corpus(const GenParams& params);

std::string gen_token(uint32_t rank_1based, uint32_t vocab_size);

}  // namespace proxima
