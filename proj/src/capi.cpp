#include "ssjoin.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "collection.hpp"
#include "join.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
ssj_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ssj::ParseError& e) {
        set_error(e.what());
        return SSJ_ERROR_PARSE;
    } catch (const ssj::IoError& e) {
        set_error(e.what());
        return SSJ_ERROR_IO;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return SSJ_ERROR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SSJ_ERROR_INTERNAL;
    } catch (...) {
        set_error("unknown failure");
        return SSJ_ERROR_INTERNAL;
    }
}

ssj::SimFunction to_sim(int similarity) {
    switch (similarity) {
        case SSJ_SIM_OVERLAP: return ssj::SimFunction::Overlap;
        case SSJ_SIM_JACCARD: return ssj::SimFunction::Jaccard;
        case SSJ_SIM_COSINE: return ssj::SimFunction::Cosine;
        case SSJ_SIM_DICE: return ssj::SimFunction::Dice;
    }
    throw std::invalid_argument("unknown similarity function code");
}

ssj::BitmapMethod to_method(int method) {
    switch (method) {
        case SSJ_BITMAP_SET: return ssj::BitmapMethod::Set;
        case SSJ_BITMAP_XOR: return ssj::BitmapMethod::Xor;
        case SSJ_BITMAP_NEXT: return ssj::BitmapMethod::Next;
        case SSJ_BITMAP_COMBINED: return ssj::BitmapMethod::Combined;
    }
    throw std::invalid_argument("unknown bitmap method code");
}

int from_method(ssj::BitmapMethod method) {
    switch (method) {
        case ssj::BitmapMethod::Set: return SSJ_BITMAP_SET;
        case ssj::BitmapMethod::Xor: return SSJ_BITMAP_XOR;
        case ssj::BitmapMethod::Next: return SSJ_BITMAP_NEXT;
        case ssj::BitmapMethod::Combined: return SSJ_BITMAP_COMBINED;
    }
    return -1;
}

ssj::JoinAlgorithm to_algorithm(int algorithm) {
    switch (algorithm) {
        case SSJ_ALGO_NAIVE: return ssj::JoinAlgorithm::Naive;
        case SSJ_ALGO_ALLPAIRS: return ssj::JoinAlgorithm::AllPairs;
        case SSJ_ALGO_PPJOIN: return ssj::JoinAlgorithm::PPJoin;
        case SSJ_ALGO_PPJOIN_PLUS: return ssj::JoinAlgorithm::PPJoinPlus;
        case SSJ_ALGO_GROUPJOIN: return ssj::JoinAlgorithm::GroupJoin;
        case SSJ_ALGO_ADAPTJOIN: return ssj::JoinAlgorithm::AdaptJoin;
        case SSJ_ALGO_PAR_BITMAP: return ssj::JoinAlgorithm::ParBitmap;
    }
    throw std::invalid_argument("unknown algorithm code");
}

ssj::JoinOptions to_options(const ssj_join_options& in) {
    ssj::JoinOptions opts;
    opts.algorithm = to_algorithm(in.algorithm);
    opts.spec = ssj::SimilaritySpec::make(to_sim(in.similarity),
                                          ssj::Rational(in.threshold_num, in.threshold_den));
    opts.bitmap_enabled = in.bitmap_enabled != 0;
    opts.bitmap_method = to_method(in.bitmap_method);
    opts.bitmap_bits = in.bitmap_bits;
    opts.bitmap_hash = in.bitmap_hash == SSJ_HASH_MULT ? ssj::HashKind::Multiplicative
                                                       : ssj::HashKind::Modulo;
    switch (in.cutoff_mode) {
        case SSJ_CUTOFF_AUTO: opts.cutoff_mode = ssj::CutoffMode::Auto; break;
        case SSJ_CUTOFF_OFF: opts.cutoff_mode = ssj::CutoffMode::Off; break;
        case SSJ_CUTOFF_EXPLICIT: opts.cutoff_mode = ssj::CutoffMode::Explicit; break;
        default: throw std::invalid_argument("unknown cutoff mode");
    }
    opts.cutoff_value = in.cutoff_value;
    switch (in.placement) {
        case SSJ_PLACEMENT_DEFAULT: opts.placement = ssj::BitmapPlacement::Default; break;
        case SSJ_PLACEMENT_FILTER2: opts.placement = ssj::BitmapPlacement::Filter2; break;
        case SSJ_PLACEMENT_FILTER3: opts.placement = ssj::BitmapPlacement::Filter3; break;
        default: throw std::invalid_argument("unknown placement");
    }
    opts.suffix_depth = in.suffix_depth;
    opts.ell_max = in.ell_max;
    opts.workers = in.workers;
    opts.buffer_capacity = in.buffer_capacity;
    return opts;
}

}  // namespace

struct ssj_collection {
    ssj::TokenizedCollection data;
};

struct ssj_report {
    ssj::JoinReport data;
    std::vector<ssj_pair> pairs;
};

extern "C" {

const char* ssj_last_error(void) { return g_last_error.c_str(); }

ssj_status ssj_collection_load(const char* path, int input_format, int qgram_size,
                               ssj_collection** out) {
    return guarded([&]() {
        if (path == nullptr || out == nullptr) {
            set_error("null argument");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        ssj::InputFormat format = input_format == SSJ_INPUT_TOKEN_IDS ? ssj::InputFormat::TokenIds
                                                                      : ssj::InputFormat::Text;
        ssj::TokenizeMode mode;
        if (input_format == SSJ_INPUT_QGRAMS) {
            mode.kind = ssj::TokenizeMode::QGrams;
            mode.q = qgram_size;
        }
        auto handle = std::make_unique<ssj_collection>();
        handle->data = ssj::read_collection(path, format, mode);
        *out = handle.release();
        return SSJ_OK;
    });
}

ssj_status ssj_collection_write(const ssj_collection* coll, const char* path) {
    return guarded([&]() {
        if (coll == nullptr || path == nullptr) {
            set_error("null argument");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        ssj::write_collection(coll->data, path);
        return SSJ_OK;
    });
}

void ssj_collection_free(ssj_collection* coll) { delete coll; }

size_t ssj_collection_size(const ssj_collection* coll) { return coll ? coll->data.size() : 0; }

int64_t ssj_collection_median_size(const ssj_collection* coll) {
    return coll ? coll->data.median_size() : 0;
}

double ssj_collection_mean_size(const ssj_collection* coll) {
    return coll ? coll->data.mean_size() : 0.0;
}

int64_t ssj_collection_max_size(const ssj_collection* coll) {
    if (coll == nullptr || coll->data.records.empty()) return 0;
    return coll->data.records.back().size();
}

int64_t ssj_collection_universe(const ssj_collection* coll) {
    return coll ? static_cast<int64_t>(coll->data.universe_size()) : 0;
}

ssj_status ssj_collection_generate(const ssj_generator_config* config, ssj_collection** out) {
    return guarded([&]() {
        if (config == nullptr || out == nullptr) {
            set_error("null argument");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        ssj::GeneratorConfig cfg;
        cfg.distribution = config->distribution == SSJ_DIST_ZIPF ? ssj::GeneratorConfig::Zipf
                                                                 : ssj::GeneratorConfig::Uniform;
        cfg.num_sets = config->num_sets;
        cfg.mean_size = config->mean_size;
        cfg.universe = config->universe;
        cfg.seed = config->seed;
        cfg.zipf_exponent = config->zipf_exponent > 0 ? config->zipf_exponent : 1.0;
        auto handle = std::make_unique<ssj_collection>();
        handle->data = ssj::generate(cfg);
        *out = handle.release();
        return SSJ_OK;
    });
}

void ssj_join_options_init(ssj_join_options* opts) {
    if (opts == nullptr) return;
    std::memset(opts, 0, sizeof(*opts));
    opts->algorithm = SSJ_ALGO_ALLPAIRS;
    opts->similarity = SSJ_SIM_JACCARD;
    opts->threshold_num = 1;
    opts->threshold_den = 2;
    opts->bitmap_method = SSJ_BITMAP_COMBINED;
    opts->cutoff_mode = SSJ_CUTOFF_AUTO;
    opts->placement = SSJ_PLACEMENT_DEFAULT;
    opts->suffix_depth = 2;
    opts->ell_max = 3;
    opts->workers = 1;
    opts->buffer_capacity = 2048;
}

ssj_status ssj_join(const ssj_collection* r, const ssj_collection* s_or_null,
                    const ssj_join_options* opts, ssj_report** out) {
    return guarded([&]() {
        if (r == nullptr || opts == nullptr || out == nullptr) {
            set_error("null argument");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        ssj::JoinOptions options = to_options(*opts);
        if (s_or_null != nullptr && options.algorithm != ssj::JoinAlgorithm::Naive) {
            set_error("RS-joins are only supported by the naive algorithm");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        auto handle = std::make_unique<ssj_report>();
        handle->data = s_or_null != nullptr
                           ? ssj::naive_join(r->data, &s_or_null->data, options.spec)
                           : ssj::run_join(r->data, options);
        handle->pairs.reserve(handle->data.pairs.size());
        for (const auto& p : handle->data.pairs) handle->pairs.push_back({p.id_r, p.id_s, p.overlap});
        *out = handle.release();
        return SSJ_OK;
    });
}

ssj_status ssj_resolve_bitmap(const ssj_collection* coll, const ssj_join_options* opts,
                              int* method, int* bits, int64_t* cutoff) {
    return guarded([&]() {
        if (coll == nullptr || opts == nullptr) {
            set_error("null argument");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        ssj::ResolvedBitmap resolved = ssj::resolve_bitmap(coll->data, to_options(*opts));
        if (method) *method = from_method(resolved.method);
        if (bits) *bits = resolved.enabled ? resolved.config.width : 0;
        if (cutoff) *cutoff = resolved.enabled ? resolved.config.cutoff : 0;
        return SSJ_OK;
    });
}

size_t ssj_report_pair_count(const ssj_report* report) { return report ? report->pairs.size() : 0; }

const ssj_pair* ssj_report_pairs(const ssj_report* report) {
    return report ? report->pairs.data() : nullptr;
}

void ssj_report_counters(const ssj_report* report, ssj_counters* out) {
    if (report == nullptr || out == nullptr) return;
    const auto& c = report->data.counters;
    out->candidates = c.candidates;
    out->pruned_length = c.pruned_length;
    out->pruned_positional = c.pruned_positional;
    out->pruned_suffix = c.pruned_suffix;
    out->pruned_bitmap = c.pruned_bitmap;
    out->bitmap_tested = c.bitmap_tested;
    out->filter_evaluations = c.filter_evaluations;
    out->verified = c.verified;
    out->matched = c.matched;
}

void ssj_report_timings(const ssj_report* report, ssj_timings* out) {
    if (report == nullptr || out == nullptr) return;
    const auto& t = report->data.timings;
    out->index_s = t.index_s;
    out->candidates_s = t.candidates_s;
    out->verify_s = t.verify_s;
    out->total_s = t.total_s;
}

uint64_t ssj_report_saturated_records(const ssj_report* report) {
    return report ? report->data.saturated_records : 0;
}

void ssj_report_free(ssj_report* report) { delete report; }

ssj_status ssj_expected_bound(int method, int bits, int64_t n, double* out) {
    return guarded([&]() {
        if (out == nullptr) {
            set_error("null argument");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        *out = ssj::expected_bound(to_method(method), bits, n);
        return SSJ_OK;
    });
}

ssj_status ssj_monte_carlo_bound(int method, int bits, int64_t n, int64_t trials, uint64_t seed,
                                 double* out) {
    return guarded([&]() {
        if (out == nullptr) {
            set_error("null argument");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        *out = ssj::monte_carlo_bound(to_method(method), bits, n, trials, seed);
        return SSJ_OK;
    });
}

ssj_status ssj_cutoff(int method, int bits, int64_t threshold_num, int64_t threshold_den,
                      int space, int64_t* out) {
    return guarded([&]() {
        if (out == nullptr) {
            set_error("null argument");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        ssj::ThresholdSpace ts = space == SSJ_SPACE_JACCARD ? ssj::ThresholdSpace::Jaccard
                                                            : ssj::ThresholdSpace::NormalizedOverlap;
        *out = ssj::cutoff(to_method(method), bits, ssj::Rational(threshold_num, threshold_den), ts);
        return SSJ_OK;
    });
}

ssj_status ssj_parse_threshold(const char* text, int64_t* num, int64_t* den) {
    return guarded([&]() {
        if (text == nullptr || num == nullptr || den == nullptr) {
            set_error("null argument");
            return SSJ_ERROR_INVALID_ARGUMENT;
        }
        ssj::Rational r = ssj::parse_rational(text);
        *num = r.num;
        *den = r.den;
        return SSJ_OK;
    });
}

}  // extern "C"
