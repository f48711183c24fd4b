#pragma once

#include <cstdint>
#include <vector>

#include "prefix_index.hpp"

namespace ssj {

struct ResultPair {
    std::uint32_t id_r;
    std::uint32_t id_s;
    std::int64_t overlap;

    friend bool operator==(const ResultPair& a, const ResultPair& b) = default;
    friend bool operator<(const ResultPair& a, const ResultPair& b) {
        if (a.id_r != b.id_r) return a.id_r < b.id_r;
        return a.id_s < b.id_s;
    }
};

struct PhaseTimings {
    double index_s = 0.0;
    double candidates_s = 0.0;
    double verify_s = 0.0;
    double total_s = 0.0;
};

struct JoinReport {
    std::vector<ResultPair> pairs;  // sorted by (id_r, id_s); id_r < id_s for self-joins
    JoinCounters counters;
    PhaseTimings timings;
    std::uint64_t saturated_records = 0;  // data-parallel join buffer overflows
    // Pairs that reached the verification stage; only filled on request.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> verified_pairs;
};

}  // namespace ssj
