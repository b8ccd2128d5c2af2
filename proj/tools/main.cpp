// proxima: word-level proximity search over multi-component key indexes.
//
// Exit codes: 0 success, 1 usage/config error, 2 I/O error, 3 corrupt index.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "proxima/analyzer.hpp"
#include "proxima/builder.hpp"
#include "proxima/executor.hpp"
#include "proxima/planner.hpp"
#include "proxima/store.hpp"

using namespace proxima;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitCorrupt = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_index_dir() {
    const char* env = std::getenv("PROXIMA_INDEX");
    return env ? env : "";
}

const std::string& require_index_dir(const std::string& dir) {
    if (dir.empty())
        throw UsageError("no index directory given (use --index or set PROXIMA_INDEX)");
    return dir;
}

void print_family_table(std::ostream& os, const StoreStats& stats) {
    os << "family      keys  postings     bytes\n";
    for (Family f : kAllFamilies) {
        const auto& fs = stats.of(f);
        char line[128];
        std::snprintf(line, sizeof(line), "%-9s %6llu %9llu %9llu\n", family_name(f),
                      static_cast<unsigned long long>(fs.key_count),
                      static_cast<unsigned long long>(fs.posting_count),
                      static_cast<unsigned long long>(fs.byte_size));
        os << line;
    }
}

nlohmann::json read_stats_json(const ReadStats& stats) {
    nlohmann::json per_family;
    for (Family f : kAllFamilies) {
        const auto& c = stats.of(f);
        per_family[family_name(f)] = {{"bytes_read", c.bytes_read},
                                      {"postings_decoded", c.postings_decoded},
                                      {"lists_read", c.lists_read}};
    }
    return {{"stats",
             {{"families", per_family},
              {"nsw_bytes_read", stats.nsw_bytes_read},
              {"total_bytes_read", stats.total_bytes()},
              {"total_postings_decoded", stats.total_postings()}}}};
}

std::vector<std::string> load_workload(const std::filesystem::path& path, size_t& skipped) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open workload: " + path.string());
    std::vector<std::string> queries;
    std::string line;
    skipped = 0;
    while (std::getline(in, line)) {
        if (tokenize(line).empty()) {
            if (!line.empty()) {
                std::cerr << "warning: skipping malformed workload line: " << line << "\n";
                ++skipped;
            }
            continue;
        }
        queries.push_back(line);
    }
    return queries;
}

// ---------------------------------------------------------------------------

struct BuildArgs {
    std::string corpus, index_dir, dict_path;
    std::string schema = "original";
    SchemaConfig cfg;
    bool trad_only = false;
    uint32_t threshold = 1024;
};

int run_build(const BuildArgs& args) {
    require_index_dir(args.index_dir);
    SchemaConfig cfg = args.cfg;
    if (args.schema == "new") {
        cfg.kind = SchemaKind::New;
    } else if (args.schema == "original") {
        cfg.kind = SchemaKind::Original;
    } else {
        throw UsageError("unknown schema: " + args.schema);
    }
    cfg.proximity = !args.trad_only;
    cfg.validate();

    auto corpus = load_corpus(args.corpus);
    Dictionary dict =
        args.dict_path.empty() ? Dictionary{} : Dictionary::load_file(args.dict_path);
    auto report = build_all(corpus, dict, cfg, args.index_dir, {args.threshold});

    std::cout << "indexed " << report.documents << " documents, " << report.tokens
              << " tokens into " << args.index_dir << "\n";
    print_family_table(std::cout, report.stats);
    return kExitOk;
}

int run_add(const std::string& corpus_path, const std::string& index_dir) {
    auto store = IndexStore::open(require_index_dir(index_dir));
    auto corpus = load_corpus(corpus_path);
    auto builder = IndexBuilder::for_append(store);
    for (const auto& doc : corpus) builder.add_document(doc);
    auto report = builder.commit_to(index_dir);
    std::cout << "added " << corpus.size() << " documents\n";
    print_family_table(std::cout, report.stats);
    return kExitOk;
}

struct SearchArgs {
    std::string query, index_dir;
    bool explain_plan = false, stats = false, doc_level = false, trad_only = false, repl = false;
};

void run_one_query(const std::string& query, const IndexStore& store, const SearchArgs& args) {
    if (tokenize(query).empty()) throw UsageError("empty query");

    if (args.doc_level) {
        ReadStats stats;
        auto docs = doc_level_search(query, store, &stats);
        for (uint32_t doc : docs) {
            nlohmann::json j{{"doc", store.doc_name(doc)}};
            std::cout << j.dump() << "\n";
        }
        if (args.stats) std::cout << read_stats_json(stats).dump() << "\n";
        return;
    }

    auto plan = plan_query(query, store.lexicon(), store.schema(), args.trad_only);
    if (args.explain_plan) std::cout << explain(plan, store.lexicon());
    auto result = execute(plan, store);
    for (size_t part = 0; part < result.parts.size(); ++part) {
        for (const auto& [doc, anchors] : result.parts[part]) {
            nlohmann::json j{{"doc", store.doc_name(doc)},
                             {"anchors", anchors},
                             {"part", part}};
            std::cout << j.dump() << "\n";
        }
    }
    if (args.stats) std::cout << read_stats_json(result.stats).dump() << "\n";
}

int run_search(const SearchArgs& args) {
    auto store = IndexStore::open(require_index_dir(args.index_dir));
    if (args.repl) {
        std::string line;
        while (std::getline(std::cin, line)) {
            if (tokenize(line).empty()) continue;
            run_one_query(line, store, args);
            std::cout << "\n";
        }
        return kExitOk;
    }
    run_one_query(args.query, store, args);
    return kExitOk;
}

struct AppgArgs {
    std::string index_dir, workload, swcounts = "100,500,1000", format = "csv";
    double nsw_factor = 4.5;
};

int run_appg(const AppgArgs& args) {
    auto store = IndexStore::open(require_index_dir(args.index_dir));
    size_t skipped = 0;
    auto workload = load_workload(args.workload, skipped);
    if (workload.empty()) throw UsageError("workload has no usable queries");

    std::vector<uint32_t> swcounts;
    std::stringstream ss(args.swcounts);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) swcounts.push_back(static_cast<uint32_t>(std::stoul(item)));
    }
    if (swcounts.empty()) throw UsageError("--swcount needs at least one value");

    nlohmann::json rows = nlohmann::json::array();
    if (args.format == "csv") std::cout << "swcount,appg\n";
    for (uint32_t sw : swcounts) {
        SchemaConfig cfg;  // APPG is defined over the original stop band
        cfg.kind = SchemaKind::Original;
        cfg.sw_count = sw;
        double value = appg(workload, store.lexicon(), cfg, args.nsw_factor);
        if (args.format == "csv") {
            std::cout << sw << "," << value << "\n";
        } else {
            rows.push_back({{"swcount", sw}, {"appg", value}});
        }
    }
    if (args.format != "csv") std::cout << rows.dump(2) << "\n";
    if (skipped) std::cerr << "skipped " << skipped << " malformed workload line(s)\n";
    return kExitOk;
}

struct BinsArgs {
    std::string index_dir, workload, metric = "postings", format = "csv";
    uint32_t step = 100;
    uint32_t max_bins = 21;
};

int run_bins(const BinsArgs& args) {
    if (args.metric != "postings" && args.metric != "bytes")
        throw UsageError("--metric must be postings or bytes");
    auto store = IndexStore::open(require_index_dir(args.index_dir));
    size_t skipped = 0;
    auto workload = load_workload(args.workload, skipped);
    if (workload.empty()) throw UsageError("workload has no usable queries");

    std::vector<uint32_t> min_fls;
    std::vector<double> prox_metric, trad_metric;
    for (const auto& query : workload) {
        auto min_fl = query_min_fl(query, store.lexicon());
        if (!min_fl || *min_fl == kUnrankedFl) {
            std::cerr << "warning: no ranked lemma, skipping query: " << query << "\n";
            ++skipped;
            continue;
        }
        min_fls.push_back(*min_fl);
        auto measure = [&](bool trad_only) {
            auto plan = plan_query(query, store.lexicon(), store.schema(), trad_only);
            auto result = execute(plan, store);
            return args.metric == "postings"
                       ? static_cast<double>(result.stats.total_postings())
                       : static_cast<double>(result.stats.total_bytes());
        };
        prox_metric.push_back(measure(false));
        trad_metric.push_back(measure(true));
    }
    auto prox = bin_by_min_fl(min_fls, prox_metric, args.step);
    auto trad = bin_by_min_fl(min_fls, trad_metric, args.step);

    size_t limit = std::min<size_t>(prox.bins.size(), args.max_bins);
    if (args.format == "csv") {
        std::cout << "bin,lo,hi,count,mean_" << args.metric << "_proximity,mean_" << args.metric
                  << "_trad\n";
        for (size_t b = 0; b < limit; ++b) {
            const auto& bin = prox.bins[b];
            std::cout << bin.index << "," << bin.index * args.step << ","
                      << (bin.index + 1) * args.step << "," << bin.count << ",";
            if (bin.count) {
                std::cout << bin.mean << "," << trad.bins[b].mean;
            } else {
                std::cout << ",";
            }
            std::cout << "\n";
        }
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (size_t b = 0; b < limit; ++b) {
            const auto& bin = prox.bins[b];
            nlohmann::json row{{"bin", bin.index},
                               {"lo", bin.index * args.step},
                               {"hi", (bin.index + 1) * args.step},
                               {"count", bin.count}};
            if (bin.count) {
                row["mean_proximity"] = bin.mean;
                row["mean_trad"] = trad.bins[b].mean;
            }
            rows.push_back(row);
        }
        std::cout << rows.dump(2) << "\n";
    }
    if (skipped) std::cerr << "skipped " << skipped << " malformed workload line(s)\n";
    return kExitOk;
}

struct GenArgs {
    GenParams params;
    std::string out;
};

int run_gen(const GenArgs& args) {
    auto corpus = gen_corpus(args.params);
    if (args.out.empty()) {
        for (const auto& d : corpus) {
            nlohmann::json j{{"id", d.id}, {"text", d.text}};
            std::cout << j.dump() << "\n";
        }
    } else {
        save_corpus_jsonl(corpus, args.out);
        std::cout << "wrote " << corpus.size() << " documents to " << args.out << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"word-level proximity search over multi-component key indexes"};
    app.require_subcommand(1);

    BuildArgs build_args;
    auto* build = app.add_subcommand("build", "build an index from a corpus");
    build->add_option("--corpus", build_args.corpus, "corpus: JSONL file or directory of text files")
        ->required();
    build->add_option("--index", build_args.index_dir, "index directory")
        ->default_val(default_index_dir());
    build->add_option("--dict", build_args.dict_path, "word->lemma dictionary (TSV)");
    build->add_option("--schema", build_args.schema, "original | new")->default_val("original");
    build->add_option("--max-distance", build_args.cfg.max_distance, "proximity window in words");
    build->add_option("--swcount", build_args.cfg.sw_count, "stop band size (original schema)");
    build->add_option("--fucount,--fu", build_args.cfg.fu_count, "frequently-used band size");
    build->add_option("--ehf", build_args.cfg.ehf_count, "extreme high-frequency band (new schema)");
    build->add_option("--hf", build_args.cfg.hf_count, "high-frequency band (new schema)");
    build->add_flag("--trad-only", build_args.trad_only, "traditional index only, no proximity families");
    build->add_option("--threshold", build_args.threshold, "posting count where lists switch to the split stream layout");

    std::string add_corpus, add_index = default_index_dir();
    auto* add = app.add_subcommand("add", "append documents to an existing index");
    add->add_option("--corpus", add_corpus, "corpus to append")->required();
    add->add_option("--index", add_index, "index directory");

    SearchArgs search_args;
    search_args.index_dir = default_index_dir();
    auto* search = app.add_subcommand("search", "run a query");
    search->add_option("query", search_args.query, "query words");
    search->add_option("--index", search_args.index_dir, "index directory");
    search->add_flag("--explain", search_args.explain_plan, "print the query plan");
    search->add_flag("--stats,--read-stats", search_args.stats, "print bytes read / postings decoded per family");
    search->add_flag("--doc-level", search_args.doc_level, "distance-free document-level search");
    search->add_flag("--trad-only", search_args.trad_only, "evaluate via traditional lists only");
    search->add_flag("--repl", search_args.repl, "read queries line by line from stdin");

    std::string stats_index = default_index_dir();
    auto* stats_cmd = app.add_subcommand("stats", "per-family index statistics");
    stats_cmd->add_option("--index", stats_index, "index directory");

    auto* analyze = app.add_subcommand("analyze", "cost model and corpus tooling");
    analyze->require_subcommand(1);

    AppgArgs appg_args;
    appg_args.index_dir = default_index_dir();
    auto* appg_cmd = analyze->add_subcommand("appg", "average planned performance gain");
    appg_cmd->add_option("--index", appg_args.index_dir, "index directory");
    appg_cmd->add_option("--workload", appg_args.workload, "query file, one per line")->required();
    appg_cmd->add_option("--swcount", appg_args.swcounts, "comma-separated stop band sizes");
    appg_cmd->add_option("--nsw-factor", appg_args.nsw_factor, "posting size ratio with NSW records");
    appg_cmd->add_option("--format", appg_args.format, "csv | json");

    BinsArgs bins_args;
    bins_args.index_dir = default_index_dir();
    auto* bins_cmd = analyze->add_subcommand("bins", "per-Min-FL-bin read metrics");
    bins_cmd->add_option("--index", bins_args.index_dir, "index directory");
    bins_cmd->add_option("--workload", bins_args.workload, "query file, one per line")->required();
    bins_cmd->add_option("--step", bins_args.step, "bin width in FL-numbers");
    bins_cmd->add_option("--metric", bins_args.metric, "postings | bytes");
    bins_cmd->add_option("--max-bins", bins_args.max_bins, "bins to report");
    bins_cmd->add_option("--format", bins_args.format, "csv | json");

    GenArgs gen_args;
    auto* gen_cmd = analyze->add_subcommand("gen", "generate a Zipf-distributed corpus");
    gen_cmd->add_option("--seed", gen_args.params.seed, "RNG seed");
    gen_cmd->add_option("--vocab", gen_args.params.vocab_size, "vocabulary size");
    gen_cmd->add_option("--docs", gen_args.params.doc_count, "document count");
    gen_cmd->add_option("--len-min", gen_args.params.doc_len_min, "minimum document length");
    gen_cmd->add_option("--len-max", gen_args.params.doc_len_max, "maximum document length");
    gen_cmd->add_option("--exponent", gen_args.params.exponent, "Zipf exponent");
    gen_cmd->add_option("--out", gen_args.out, "output JSONL file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (build->parsed()) return run_build(build_args);
        if (add->parsed()) return run_add(add_corpus, add_index);
        if (search->parsed()) {
            if (!search_args.repl && search_args.query.empty())
                throw UsageError("search needs a query (or --repl)");
            return run_search(search_args);
        }
        if (stats_cmd->parsed()) {
            auto store = IndexStore::open(require_index_dir(stats_index));
            print_family_table(std::cout, store.stats());
            std::cout << "documents " << store.doc_count() << "\n";
            return kExitOk;
        }
        if (analyze->parsed()) {
            if (appg_cmd->parsed()) return run_appg(appg_args);
            if (bins_cmd->parsed()) return run_bins(bins_args);
            if (gen_cmd->parsed()) return run_gen(gen_args);
        }
        throw UsageError("no command");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CorruptIndexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
