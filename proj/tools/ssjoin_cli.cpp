// Command-line front end for the set-similarity-join engine. Everything goes
// through the public C API; this file only does argument handling, file
// plumbing and report formatting.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssjoin.h"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

int exit_code_for(ssj_status status) {
    return status == SSJ_ERROR_INVALID_ARGUMENT ? kExitUsage : kExitData;
}

[[noreturn]] void die(ssj_status status) {
    std::cerr << "error: " << ssj_last_error() << "\n";
    std::exit(exit_code_for(status));
}

[[noreturn]] void die_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(kExitUsage);
}

struct CollectionHandle {
    ssj_collection* ptr = nullptr;
    ~CollectionHandle() { ssj_collection_free(ptr); }
};

struct ReportHandle {
    ssj_report* ptr = nullptr;
    ~ReportHandle() { ssj_report_free(ptr); }
};

const std::map<std::string, int> kAlgos = {
    {"naive", SSJ_ALGO_NAIVE},         {"allpairs", SSJ_ALGO_ALLPAIRS},
    {"ppjoin", SSJ_ALGO_PPJOIN},       {"ppjoin+", SSJ_ALGO_PPJOIN_PLUS},
    {"groupjoin", SSJ_ALGO_GROUPJOIN}, {"adaptjoin", SSJ_ALGO_ADAPTJOIN},
    {"par-bitmap", SSJ_ALGO_PAR_BITMAP}};

const std::map<std::string, int> kSims = {{"overlap", SSJ_SIM_OVERLAP},
                                          {"jaccard", SSJ_SIM_JACCARD},
                                          {"cosine", SSJ_SIM_COSINE},
                                          {"dice", SSJ_SIM_DICE}};

const std::map<std::string, int> kMethods = {{"set", SSJ_BITMAP_SET},
                                             {"xor", SSJ_BITMAP_XOR},
                                             {"next", SSJ_BITMAP_NEXT},
                                             {"combined", SSJ_BITMAP_COMBINED}};

std::string algo_name(int algo) {
    for (const auto& [name, value] : kAlgos)
        if (value == algo) return name;
    return "?";
}

std::string method_name(int method) {
    for (const auto& [name, value] : kMethods)
        if (value == method) return name;
    return "?";
}

int lookup(const std::map<std::string, int>& table, const std::string& key, const char* what) {
    auto it = table.find(key);
    if (it == table.end()) die_usage(std::string("unknown ") + what + " '" + key + "'");
    return it->second;
}

void load_collection(const std::string& path, const std::string& format_name, int q,
                     CollectionHandle& out) {
    int format = SSJ_INPUT_TOKEN_IDS;
    if (format_name == "words") format = SSJ_INPUT_WORDS;
    else if (format_name == "qgrams") format = SSJ_INPUT_QGRAMS;
    else if (format_name != "ids") die_usage("unknown input format '" + format_name + "'");
    ssj_status status = ssj_collection_load(path.c_str(), format, q, &out.ptr);
    if (status != SSJ_OK) die(status);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) die_usage("cannot open output file '" + path + "'");
    return file;
}

struct ThresholdArg {
    int64_t num = 1;
    int64_t den = 2;
    std::string text = "1/2";

    void parse(const std::string& raw) {
        ssj_status status = ssj_parse_threshold(raw.c_str(), &num, &den);
        if (status != SSJ_OK) die(status);
        text = raw;
    }
};

struct JoinFlags {
    std::string algo = "allpairs";
    std::string sim = "jaccard";
    std::string threshold = "1/2";
    std::string bitmap = "default";
    int bits = 0;
    std::string hash = "mod";
    std::string cutoff = "auto";
    std::string placement = "default";
    int workers = 1;
    int suffix_depth = 2;
    int ell_max = 3;
    int buffer_cap = 2048;

    void register_on(CLI::App* cmd) {
        cmd->add_option("--algo", algo, "naive|allpairs|ppjoin|ppjoin+|groupjoin|adaptjoin|par-bitmap");
        cmd->add_option("--sim", sim, "overlap|jaccard|cosine|dice");
        cmd->add_option("--threshold,-t", threshold, "threshold as p/q or decimal");
        cmd->add_option("--bitmap", bitmap, "off|set|xor|next|combined");
        cmd->add_option("--bits", bits, "sketch width in bits (0 = auto)");
        cmd->add_option("--hash", hash, "mod|mult");
        cmd->add_option("--cutoff", cutoff, "auto|off|N");
        cmd->add_option("--placement", placement, "f2|f3");
        cmd->add_option("--workers", workers, "worker count for par-bitmap");
        cmd->add_option("--suffix-depth", suffix_depth, "suffix partition rounds");
        cmd->add_option("--ell-max", ell_max, "adaptive prefix extension cap");
        cmd->add_option("--buffer-cap", buffer_cap, "par-bitmap candidate buffer capacity");
    }

    ssj_join_options to_options() const {
        ssj_join_options opts;
        ssj_join_options_init(&opts);
        opts.algorithm = lookup(kAlgos, algo, "algorithm");
        opts.similarity = lookup(kSims, sim, "similarity function");
        ThresholdArg t;
        t.parse(threshold);
        opts.threshold_num = t.num;
        opts.threshold_den = t.den;

        std::string bm = bitmap;
        if (bm == "default") bm = opts.algorithm == SSJ_ALGO_PAR_BITMAP ? "xor" : "off";
        if (bm != "off") {
            opts.bitmap_enabled = 1;
            opts.bitmap_method = lookup(kMethods, bm, "bitmap method");
        }
        opts.bitmap_bits = bits;
        opts.bitmap_hash = hash == "mult" ? SSJ_HASH_MULT : SSJ_HASH_MOD;

        if (cutoff == "auto") {
            // The scan-everything default for the data-parallel join.
            opts.cutoff_mode =
                opts.algorithm == SSJ_ALGO_PAR_BITMAP ? SSJ_CUTOFF_OFF : SSJ_CUTOFF_AUTO;
        } else if (cutoff == "off") {
            opts.cutoff_mode = SSJ_CUTOFF_OFF;
        } else {
            opts.cutoff_mode = SSJ_CUTOFF_EXPLICIT;
            try {
                opts.cutoff_value = std::stoll(cutoff);
            } catch (...) {
                die_usage("cutoff must be auto, off or an integer");
            }
        }

        if (placement == "f2") opts.placement = SSJ_PLACEMENT_FILTER2;
        else if (placement == "f3") opts.placement = SSJ_PLACEMENT_FILTER3;
        else if (placement != "default") die_usage("placement must be f2 or f3");

        opts.workers = workers;
        opts.suffix_depth = suffix_depth;
        opts.ell_max = ell_max;
        opts.buffer_capacity = buffer_cap;
        return opts;
    }
};

json stats_json(const ssj_collection* coll, const ssj_join_options& opts, const ssj_report* report,
                const std::string& threshold_text) {
    ssj_counters c;
    ssj_timings t;
    ssj_report_counters(report, &c);
    ssj_report_timings(report, &t);

    json bitmap = {{"enabled", opts.bitmap_enabled != 0}};
    if (opts.bitmap_enabled) {
        int method = 0, bits = 0;
        int64_t cutoff = 0;
        if (ssj_resolve_bitmap(coll, &opts, &method, &bits, &cutoff) == SSJ_OK) {
            bitmap["method"] = method_name(method);
            bitmap["bits"] = bits;
            if (cutoff == INT64_MAX) bitmap["cutoff"] = "unbounded";
            else bitmap["cutoff"] = cutoff;
        }
    }

    uint64_t pruned_total =
        c.pruned_length + c.pruned_positional + c.pruned_suffix + c.pruned_bitmap;
    double ratio = c.pruned_bitmap + c.verified > 0
                       ? static_cast<double>(c.pruned_bitmap) /
                             static_cast<double>(c.pruned_bitmap + c.verified)
                       : 0.0;
    double precision = c.verified > 0
                           ? static_cast<double>(c.matched) / static_cast<double>(c.verified)
                           : 1.0;
    return json{{"algorithm", algo_name(opts.algorithm)},
                {"similarity",
                 [&] {
                     for (const auto& [name, value] : kSims)
                         if (value == opts.similarity) return name;
                     return std::string("?");
                 }()},
                {"threshold", threshold_text},
                {"bitmap", bitmap},
                {"counters",
                 {{"candidates", c.candidates},
                  {"pruned_length", c.pruned_length},
                  {"pruned_positional", c.pruned_positional},
                  {"pruned_suffix", c.pruned_suffix},
                  {"pruned_bitmap", c.pruned_bitmap},
                  {"pruned_total", pruned_total},
                  {"bitmap_tested", c.bitmap_tested},
                  {"verified", c.verified},
                  {"matched", c.matched}}},
                {"bitmap_filter_ratio", ratio},
                {"filter_precision", precision},
                {"timings",
                 {{"index_s", t.index_s},
                  {"candidates_s", t.candidates_s},
                  {"verify_s", t.verify_s},
                  {"total_s", t.total_s}}},
                {"pairs", ssj_report_pair_count(report)},
                {"saturated_records", ssj_report_saturated_records(report)}};
}

int cmd_prepare(const std::string& in_path, const std::string& input, int q,
                const std::string& out_path) {
    CollectionHandle coll;
    load_collection(in_path, input, q, coll);
    ssj_status status = ssj_collection_write(coll.ptr, out_path.c_str());
    if (status != SSJ_OK) die(status);
    std::cerr << "prepared " << ssj_collection_size(coll.ptr) << " records -> " << out_path << "\n";
    return 0;
}

int cmd_gen(const std::string& dist, int64_t sets, double mean, int64_t universe, uint64_t seed,
            double zipf_exponent, const std::string& out_path) {
    ssj_generator_config cfg;
    cfg.distribution = dist == "zipf" ? SSJ_DIST_ZIPF : SSJ_DIST_UNIFORM;
    if (dist != "zipf" && dist != "uniform") die_usage("distribution must be uniform or zipf");
    cfg.num_sets = sets;
    cfg.mean_size = mean;
    cfg.universe = universe;
    cfg.seed = seed;
    cfg.zipf_exponent = zipf_exponent;
    CollectionHandle coll;
    ssj_status status = ssj_collection_generate(&cfg, &coll.ptr);
    if (status != SSJ_OK) die(status);
    status = ssj_collection_write(coll.ptr, out_path.c_str());
    if (status != SSJ_OK) die(status);
    std::cerr << "generated " << sets << " sets (mean size "
              << ssj_collection_mean_size(coll.ptr) << ", median "
              << ssj_collection_median_size(coll.ptr) << ") -> " << out_path << "\n";
    return 0;
}

int cmd_join(const std::vector<std::string>& paths, const std::string& input, int q,
             const JoinFlags& flags, const std::string& out_path, const std::string& stats_path) {
    CollectionHandle r, s;
    load_collection(paths[0], input, q, r);
    if (paths.size() > 1) load_collection(paths[1], input, q, s);

    ssj_join_options opts = flags.to_options();
    ReportHandle report;
    ssj_status status = ssj_join(r.ptr, s.ptr, &opts, &report.ptr);
    if (status != SSJ_OK) die(status);

    std::ofstream file;
    std::ostream& out = open_output(out_path, file);
    const ssj_pair* pairs = ssj_report_pairs(report.ptr);
    size_t count = ssj_report_pair_count(report.ptr);
    for (size_t i = 0; i < count; ++i)
        out << pairs[i].id_r << ' ' << pairs[i].id_s << ' ' << pairs[i].overlap << '\n';

    json stats = stats_json(r.ptr, opts, report.ptr, flags.threshold);
    if (!stats_path.empty()) {
        std::ofstream sf(stats_path);
        if (!sf) die_usage("cannot open stats file '" + stats_path + "'");
        sf << stats.dump(2) << "\n";
    }
    ssj_timings t;
    ssj_report_timings(report.ptr, &t);
    std::cerr << algo_name(opts.algorithm) << ": " << count << " pairs, "
              << stats["counters"]["candidates"] << " candidates, "
              << stats["counters"]["verified"] << " verified, " << t.total_s << "s\n";
    return 0;
}

int cmd_curves(const std::vector<std::string>& methods, const std::vector<int>& bits,
               int64_t n_from, int64_t n_to, const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_output(out_path, file);
    out << "method,b,n,expected,normalized,jaccard_equiv\n";
    for (const std::string& name : methods) {
        int method = lookup(kMethods, name, "bitmap method");
        for (int b : bits) {
            for (int64_t n = n_from; n <= n_to; ++n) {
                double e = 0.0;
                ssj_status status = ssj_expected_bound(method, b, n, &e);
                if (status != SSJ_OK) die(status);
                double normalized = n == 0 ? 0.0 : e / static_cast<double>(n);
                char buf[160];
                std::snprintf(buf, sizeof(buf), "%s,%d,%lld,%.10g,%.10g,%.10g\n", name.c_str(), b,
                              static_cast<long long>(n), e, normalized,
                              normalized / (2.0 - normalized));
                out << buf;
            }
        }
    }
    return 0;
}

int cmd_simulate(const std::vector<std::string>& methods, int bits,
                 const std::vector<int64_t>& sizes, int64_t trials, uint64_t seed,
                 const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_output(out_path, file);
    out << "method,b,n,trials,analytic,simulated,err_over_n\n";
    for (const std::string& name : methods) {
        int method = lookup(kMethods, name, "bitmap method");
        for (int64_t n : sizes) {
            double analytic = 0.0, simulated = 0.0;
            ssj_status status = ssj_expected_bound(method, bits, n, &analytic);
            if (status != SSJ_OK) die(status);
            status = ssj_monte_carlo_bound(method, bits, n, trials, seed, &simulated);
            if (status != SSJ_OK) die(status);
            double err = std::abs(simulated - analytic) / static_cast<double>(std::max<int64_t>(n, 1));
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s,%d,%lld,%lld,%.10g,%.10g,%.3e\n", name.c_str(),
                          bits, static_cast<long long>(n), static_cast<long long>(trials), analytic,
                          simulated, err);
            out << buf;
        }
    }
    return 0;
}

int cmd_cutoff(const std::vector<std::string>& methods, const std::vector<int>& bits,
               const std::string& threshold, const std::string& space,
               const std::string& out_path) {
    ThresholdArg t;
    t.parse(threshold);
    int space_code = SSJ_SPACE_JACCARD;
    if (space == "normalized") space_code = SSJ_SPACE_NORMALIZED;
    else if (space != "jaccard") die_usage("space must be jaccard or normalized");

    std::ofstream file;
    std::ostream& out = open_output(out_path, file);
    out << "method,b,threshold,space,cutoff\n";
    for (const std::string& name : methods) {
        int method = lookup(kMethods, name, "bitmap method");
        for (int b : bits) {
            int64_t omega = 0;
            ssj_status status = ssj_cutoff(method, b, t.num, t.den, space_code, &omega);
            if (status != SSJ_OK) die(status);
            out << name << ',' << b << ',' << threshold << ',' << space << ',';
            if (omega == INT64_MAX) out << "unbounded\n";
            else out << omega << '\n';
        }
    }
    return 0;
}

struct BenchRow {
    std::string collection;
    std::string algo;
    std::string bitmap;
    std::string threshold;
    double mean_total_s = 0.0;
    double mean_index_s = 0.0;
    double mean_candidates_s = 0.0;
    double mean_verify_s = 0.0;
    ssj_counters counters{};
    double filter_ratio = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    size_t pairs = 0;
};

int cmd_bench(const std::vector<std::string>& collections, const std::vector<std::string>& algos,
              const std::string& sim, const std::vector<std::string>& thresholds,
              const std::vector<std::string>& bitmaps, int reps, const std::string& input, int q,
              const std::string& csv_path) {
    if (collections.empty() || algos.empty() || thresholds.empty() || bitmaps.empty())
        die_usage("bench needs at least one collection, algorithm, threshold and bitmap config");
    if (reps < 1) die_usage("repetitions must be >= 1");

    std::vector<BenchRow> rows;
    for (const std::string& path : collections) {
        CollectionHandle coll;
        load_collection(path, input, q, coll);

        for (const std::string& threshold : thresholds) {
            // Brute-force reference once per (collection, threshold): the
            // recall column is measured, not assumed.
            JoinFlags oracle_flags;
            oracle_flags.algo = "naive";
            oracle_flags.sim = sim;
            oracle_flags.threshold = threshold;
            oracle_flags.bitmap = "off";
            ssj_join_options oracle_opts = oracle_flags.to_options();
            ReportHandle oracle;
            ssj_status status = ssj_join(coll.ptr, nullptr, &oracle_opts, &oracle.ptr);
            if (status != SSJ_OK) die(status);
            const ssj_pair* want = ssj_report_pairs(oracle.ptr);
            const size_t want_count = ssj_report_pair_count(oracle.ptr);

            for (const std::string& algo : algos) {
                for (const std::string& bitmap : bitmaps) {
                    JoinFlags flags;
                    flags.algo = algo;
                    flags.sim = sim;
                    flags.threshold = threshold;
                    flags.bitmap = bitmap;
                    ssj_join_options opts = flags.to_options();

                    BenchRow row;
                    row.collection = path;
                    row.algo = algo;
                    row.bitmap = bitmap;
                    row.threshold = threshold;

                    double total = 0.0, index_s = 0.0, cand_s = 0.0, verify_s = 0.0;
                    ReportHandle last;
                    for (int rep = 0; rep < reps; ++rep) {
                        ssj_report_free(last.ptr);
                        last.ptr = nullptr;
                        status = ssj_join(coll.ptr, nullptr, &opts, &last.ptr);
                        if (status != SSJ_OK) die(status);
                        ssj_timings t;
                        ssj_report_timings(last.ptr, &t);
                        total += t.total_s;
                        index_s += t.index_s;
                        cand_s += t.candidates_s;
                        verify_s += t.verify_s;
                    }
                    row.mean_total_s = total / reps;
                    row.mean_index_s = index_s / reps;
                    row.mean_candidates_s = cand_s / reps;
                    row.mean_verify_s = verify_s / reps;
                    ssj_report_counters(last.ptr, &row.counters);
                    row.pairs = ssj_report_pair_count(last.ptr);

                    const ssj_pair* got = ssj_report_pairs(last.ptr);
                    size_t hits = 0;
                    for (size_t i = 0, j = 0; i < row.pairs && j < want_count;) {
                        if (got[i].id_r == want[j].id_r && got[i].id_s == want[j].id_s) {
                            ++hits; ++i; ++j;
                        } else if (std::make_pair(got[i].id_r, got[i].id_s) <
                                   std::make_pair(want[j].id_r, want[j].id_s)) {
                            ++i;
                        } else {
                            ++j;
                        }
                    }
                    row.recall = want_count == 0 ? 1.0
                                                 : static_cast<double>(hits) /
                                                       static_cast<double>(want_count);
                    const auto& c = row.counters;
                    row.filter_ratio = c.pruned_bitmap + c.verified > 0
                                           ? static_cast<double>(c.pruned_bitmap) /
                                                 static_cast<double>(c.pruned_bitmap + c.verified)
                                           : 0.0;
                    row.precision = c.verified > 0 ? static_cast<double>(c.matched) /
                                                         static_cast<double>(c.verified)
                                                   : 1.0;
                    if (row.recall != 1.0 || row.pairs != want_count) {
                        std::cerr << "error: " << algo << " (" << bitmap << ", t=" << threshold
                                  << ") diverged from the brute-force result on " << path << "\n";
                        return kExitData;
                    }
                    rows.push_back(row);
                }
            }
        }
    }

    std::ofstream csv;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) die_usage("cannot open csv file '" + csv_path + "'");
        csv << "collection,algorithm,bitmap,threshold,mean_total_s,mean_index_s,"
               "mean_candidates_s,mean_verify_s,candidates,pruned_length,pruned_positional,"
               "pruned_suffix,pruned_bitmap,verified,matched,filter_ratio,precision,recall\n";
        for (const auto& r : rows) {
            csv << r.collection << ',' << r.algo << ',' << r.bitmap << ',' << r.threshold << ','
                << r.mean_total_s << ',' << r.mean_index_s << ',' << r.mean_candidates_s << ','
                << r.mean_verify_s << ',' << r.counters.candidates << ',' << r.counters.pruned_length
                << ',' << r.counters.pruned_positional << ',' << r.counters.pruned_suffix << ','
                << r.counters.pruned_bitmap << ',' << r.counters.verified << ','
                << r.counters.matched << ',' << r.filter_ratio << ',' << r.precision << ','
                << r.recall << '\n';
        }
    }

    std::printf("%-24s %-10s %-9s %-7s %10s %12s %10s %9s %7s %7s %7s\n", "collection", "algo",
                "bitmap", "tau", "time[s]", "candidates", "verified", "matched", "ratio", "prec",
                "recall");
    for (const auto& r : rows) {
        std::string shown = r.collection.size() > 24 ? r.collection.substr(r.collection.size() - 24)
                                                     : r.collection;
        std::printf("%-24s %-10s %-9s %-7s %10.4f %12llu %10llu %9llu %7.3f %7.3f %7.3f\n",
                    shown.c_str(), r.algo.c_str(), r.bitmap.c_str(), r.threshold.c_str(),
                    r.mean_total_s, static_cast<unsigned long long>(r.counters.candidates),
                    static_cast<unsigned long long>(r.counters.verified),
                    static_cast<unsigned long long>(r.counters.matched), r.filter_ratio,
                    r.precision, r.recall);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact set similarity joins with sketch-based candidate pruning"};
    app.require_subcommand(1);

    // prepare
    auto* prepare = app.add_subcommand("prepare", "canonicalize a collection file");
    std::string prep_in, prep_out, prep_input = "ids";
    int prep_q = 2;
    prepare->add_option("input", prep_in, "input file")->required();
    prepare->add_option("--format", prep_input, "ids|words|qgrams");
    prepare->add_option("--q", prep_q, "q-gram length");
    prepare->add_option("--output,-o", prep_out, "output file")->required();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic collection");
    std::string gen_dist = "uniform", gen_out;
    int64_t gen_sets = 0, gen_universe = 0;
    double gen_mean = 0.0, gen_zipf = 1.0;
    uint64_t gen_seed = 0;
    gen->add_option("--dist", gen_dist, "uniform|zipf");
    gen->add_option("--sets", gen_sets, "number of sets")->required();
    gen->add_option("--mean", gen_mean, "mean set size")->required();
    gen->add_option("--universe", gen_universe, "distinct token count")->required();
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--zipf-exponent", gen_zipf, "rank exponent for zipf");
    gen->add_option("--output,-o", gen_out, "output file")->required();

    // join
    auto* join = app.add_subcommand("join", "run a similarity self-join (or naive RS-join)");
    std::vector<std::string> join_paths;
    std::string join_input = "ids", join_out = "-", join_stats;
    int join_q = 2;
    JoinFlags join_flags;
    join->add_option("collection", join_paths, "collection file(s)")->required()->expected(1, 2);
    join->add_option("--format", join_input, "ids|words|qgrams");
    join->add_option("--q", join_q, "q-gram length");
    join_flags.register_on(join);
    join->add_option("--output,-o", join_out, "pairs file ('-' for stdout)");
    join->add_option("--stats", join_stats, "write run statistics as JSON");

    // curves
    auto* curves = app.add_subcommand("curves", "tabulate expected sketch bounds as CSV");
    std::vector<std::string> curve_methods = {"set", "xor", "next"};
    std::vector<int> curve_bits = {64};
    int64_t curve_from = 1, curve_to = 256;
    std::string curve_out = "-";
    curves->add_option("--methods", curve_methods, "bitmap methods")->delimiter(',');
    curves->add_option("--bits", curve_bits, "sketch widths")->delimiter(',');
    curves->add_option("--n-from", curve_from, "first set size");
    curves->add_option("--n-to", curve_to, "last set size");
    curves->add_option("--output,-o", curve_out, "CSV file ('-' for stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "compare analytic bounds against simulation");
    std::vector<std::string> sim_methods = {"set", "xor", "next"};
    std::vector<int64_t> sim_sizes = {1, 8, 32, 55, 128};
    int sim_bits = 64;
    int64_t sim_trials = 100000;
    uint64_t sim_seed = 1;
    std::string sim_out = "-";
    simulate->add_option("--methods", sim_methods, "bitmap methods")->delimiter(',');
    simulate->add_option("--bits", sim_bits, "sketch width");
    simulate->add_option("--sizes", sim_sizes, "set sizes")->delimiter(',');
    simulate->add_option("--trials", sim_trials, "pairs per size");
    simulate->add_option("--seed", sim_seed, "random seed");
    simulate->add_option("--output,-o", sim_out, "CSV file ('-' for stdout)");

    // cutoff
    auto* cutoff_cmd = app.add_subcommand("cutoff", "largest set size the filter discriminates");
    std::vector<std::string> cut_methods = {"set", "xor", "next"};
    std::vector<int> cut_bits = {64};
    std::string cut_threshold, cut_space = "jaccard", cut_out = "-";
    cutoff_cmd->add_option("--methods", cut_methods, "bitmap methods")->delimiter(',');
    cutoff_cmd->add_option("--bits", cut_bits, "sketch widths")->delimiter(',');
    cutoff_cmd->add_option("--threshold,-t", cut_threshold, "threshold")->required();
    cutoff_cmd->add_option("--space", cut_space, "jaccard|normalized");
    cutoff_cmd->add_option("--output,-o", cut_out, "CSV file ('-' for stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "run a benchmark matrix with recall checks");
    std::vector<std::string> bench_colls, bench_algos = {"allpairs"},
                             bench_thresholds = {"0.5"}, bench_bitmaps = {"off", "combined"};
    std::string bench_sim = "jaccard", bench_input = "ids", bench_csv;
    int bench_reps = 5, bench_q = 2;
    bench->add_option("--collections", bench_colls, "collection files")->required()->delimiter(',');
    bench->add_option("--algos", bench_algos, "algorithms")->delimiter(',');
    bench->add_option("--sim", bench_sim, "similarity function");
    bench->add_option("--thresholds", bench_thresholds, "threshold list")->delimiter(',');
    bench->add_option("--bitmaps", bench_bitmaps, "bitmap configs (off|set|xor|next|combined)")
        ->delimiter(',');
    bench->add_option("--reps", bench_reps, "repetitions per cell");
    bench->add_option("--format", bench_input, "ids|words|qgrams");
    bench->add_option("--q", bench_q, "q-gram length");
    bench->add_option("--csv", bench_csv, "write rows as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (prepare->parsed()) return cmd_prepare(prep_in, prep_input, prep_q, prep_out);
    if (gen->parsed())
        return cmd_gen(gen_dist, gen_sets, gen_mean, gen_universe, gen_seed, gen_zipf, gen_out);
    if (join->parsed())
        return cmd_join(join_paths, join_input, join_q, join_flags, join_out, join_stats);
    if (curves->parsed()) return cmd_curves(curve_methods, curve_bits, curve_from, curve_to, curve_out);
    if (simulate->parsed())
        return cmd_simulate(sim_methods, sim_bits, sim_sizes, sim_trials, sim_seed, sim_out);
    if (cutoff_cmd->parsed())
        return cmd_cutoff(cut_methods, cut_bits, cut_threshold, cut_space, cut_out);
    if (bench->parsed())
        return cmd_bench(bench_colls, bench_algos, bench_sim, bench_thresholds, bench_bitmaps,
                         bench_reps, bench_input, bench_q, bench_csv);
    return kExitUsage;
}
