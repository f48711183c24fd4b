#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace ssj;
using namespace ssj::testutil;

namespace {

JoinOptions par_options(Rational tau) {
    auto opts = make_options(JoinAlgorithm::ParBitmap, SimFunction::Jaccard, tau);
    opts.bitmap_enabled = true;
    opts.bitmap_method = BitmapMethod::Xor;
    opts.cutoff_mode = CutoffMode::Off;
    return opts;
}

}  // namespace

TEST_CASE("data-parallel join equals the brute-force oracle") {
    auto coll = random_collection(1500, 8, 150, 8);
    for (const Rational& tau : {Rational(1, 2), Rational(7, 10), Rational(9, 10)}) {
        auto oracle = naive_join(coll, nullptr, SimilaritySpec::make(SimFunction::Jaccard, tau));
        auto opts = par_options(tau);
        for (int workers : {1, 4, 8}) {
            opts.workers = workers;
            auto report = run_join(coll, opts);
            CAPTURE(workers);
            CHECK(same_pairs(report, oracle));
            CHECK(report.counters.candidates ==
                  report.counters.pruned_total() + report.counters.verified);
        }
    }
}

TEST_CASE("worker count changes nothing observable") {
    auto coll = random_collection(1200, 9, 100, 9);
    auto opts = par_options(Rational(3, 5));
    opts.record_verified_pairs = true;

    opts.workers = 1;
    auto base = run_join(coll, opts);
    auto base_verified = base.verified_pairs;
    std::sort(base_verified.begin(), base_verified.end());

    for (int workers : {2, 4, 8, 64}) {
        opts.workers = workers;
        auto report = run_join(coll, opts);
        CHECK(same_pairs(report, base));
        CHECK(report.counters.candidates == base.counters.candidates);
        CHECK(report.counters.pruned_bitmap == base.counters.pruned_bitmap);
        CHECK(report.counters.verified == base.counters.verified);
        CHECK(report.saturated_records == base.saturated_records);
        auto verified = report.verified_pairs;
        std::sort(verified.begin(), verified.end());
        CHECK(verified == base_verified);
    }
}

TEST_CASE("a one-slot buffer degrades to verification without losing pairs") {
    auto coll = random_collection(800, 8, 60, 10);
    auto oracle = naive_join(coll, nullptr,
                             SimilaritySpec::make(SimFunction::Jaccard, Rational(1, 2)));
    auto opts = par_options(Rational(1, 2));
    opts.buffer_capacity = 1;
    opts.workers = 4;
    auto report = run_join(coll, opts);
    CHECK(same_pairs(report, oracle));
    CHECK(report.saturated_records > 0);
}

TEST_CASE("records overflowing the default buffer stay exact") {
    // Thousands of identical records: every predecessor survives the filter,
    // so late records exceed the 2048-slot buffer.
    std::vector<std::vector<TokenId>> raw(2500, std::vector<TokenId>{1, 2, 3, 4, 5});
    auto coll = make_collection(std::move(raw));
    auto opts = par_options(Rational(9, 10));
    opts.workers = 4;
    auto report = run_join(coll, opts);
    CHECK(report.saturated_records > 0);
    CHECK(report.pairs.size() == 2500ull * 2499 / 2);
    CHECK(report.counters.matched == report.pairs.size());
}

TEST_CASE("length cut keeps only sizes that can reach the threshold") {
    auto coll = random_collection(300, 6, 80, 11);
    Rational tau(3, 5);
    auto spec = SimilaritySpec::make(SimFunction::Jaccard, tau);
    for (std::size_t i = 0; i < coll.records.size(); ++i) {
        std::int64_t min_size = ceil_div(static_cast<__int128>(tau.num) * coll.records[i].size(),
                                         tau.den);
        for (std::size_t j = 0; j < i; ++j) {
            if (coll.records[j].size() >= min_size) continue;
            auto value = similarity(SimFunction::Jaccard, coll.records[i], coll.records[j]);
            CHECK_FALSE(meets_threshold(value, spec));
        }
    }
}

TEST_CASE("bitmap disabled reduces to a length-filtered scan") {
    auto coll = random_collection(500, 8, 60, 12);
    auto opts = make_options(JoinAlgorithm::ParBitmap, SimFunction::Jaccard, Rational(7, 10));
    opts.bitmap_enabled = false;
    auto oracle = naive_join(coll, nullptr, opts.spec);
    auto report = run_join(coll, opts);
    CHECK(same_pairs(report, oracle));
    CHECK(report.counters.pruned_bitmap == 0);
    CHECK(report.counters.verified == report.counters.candidates);
}

TEST_CASE("configuration errors") {
    auto coll = make_collection({{1, 2}, {1, 2, 3}});
    auto opts = par_options(Rational(1, 2));
    opts.workers = 0;
    CHECK_THROWS_AS(run_join(coll, opts), std::invalid_argument);

    auto dice = make_options(JoinAlgorithm::ParBitmap, SimFunction::Dice, Rational(1, 2));
    CHECK_THROWS_AS(run_join(coll, dice), std::invalid_argument);

    auto single = make_collection({{5, 6}});
    CHECK(run_join(single, par_options(Rational(1, 2))).pairs.empty());
}
