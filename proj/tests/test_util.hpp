#pragma once

#include <algorithm>
#include <vector>

#include "collection.hpp"
#include "join.hpp"

namespace ssj::testutil {

/// Canonical collection from explicit token-id records (records are sorted
/// and deduped here; the id order is taken as the global token order).
inline TokenizedCollection make_collection(std::vector<std::vector<TokenId>> raw) {
    TokenizedCollection coll;
    TokenId max_id = 0;
    for (auto& tokens : raw) {
        std::sort(tokens.begin(), tokens.end());
        tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
        for (TokenId t : tokens) max_id = std::max(max_id, t);
        RecordSet r;
        r.tokens = std::move(tokens);
        coll.records.push_back(std::move(r));
    }
    std::sort(coll.records.begin(), coll.records.end(), [](const RecordSet& a, const RecordSet& b) {
        if (a.tokens.size() != b.tokens.size()) return a.tokens.size() < b.tokens.size();
        return a.tokens < b.tokens;
    });
    for (std::size_t i = 0; i < coll.records.size(); ++i)
        coll.records[i].id = static_cast<std::uint32_t>(i);
    if (!coll.records.empty()) {
        coll.token_frequency.assign(static_cast<std::size_t>(max_id) + 1, 0);
        for (const auto& r : coll.records)
            for (TokenId t : r.tokens) ++coll.token_frequency[t];
    }
    return coll;
}

inline TokenizedCollection random_collection(std::int64_t sets, double mean, std::int64_t universe,
                                             std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.distribution = GeneratorConfig::Uniform;
    cfg.num_sets = sets;
    cfg.mean_size = mean;
    cfg.universe = universe;
    cfg.seed = seed;
    return generate(cfg);
}

inline JoinOptions make_options(JoinAlgorithm algo, SimFunction f, Rational t) {
    JoinOptions opts;
    opts.algorithm = algo;
    opts.spec = SimilaritySpec::make(f, t);
    return opts;
}

inline bool same_pairs(const JoinReport& a, const JoinReport& b) {
    if (a.pairs.size() != b.pairs.size()) return false;
    for (std::size_t i = 0; i < a.pairs.size(); ++i)
        if (!(a.pairs[i] == b.pairs[i])) return false;
    return true;
}

}  // namespace ssj::testutil
