#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "collection.hpp"

using namespace ssj;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "ssjoin_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::filesystem::path write_file(const std::string& name, const std::string& body) {
    auto path = temp_file(name);
    std::ofstream out(path);
    out << body;
    return path;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("bigram tokenization of a two-word string") {
    auto grams = tokenize("Data Warehouse", {TokenizeMode::QGrams, 2});
    std::vector<std::string> expected = {"Da", "at", "ta", "a ", " W", "Wa", "ar",
                                         "re", "eh", "ho", "ou", "us", "se"};
    CHECK(grams == expected);
}

TEST_CASE("tokenization edge cases") {
    CHECK(tokenize("", {TokenizeMode::Words, 0}).empty());
    CHECK(tokenize("", {TokenizeMode::QGrams, 2}).empty());
    CHECK(tokenize("ab", {TokenizeMode::QGrams, 3}).empty());

    auto words = tokenize("a a b", {TokenizeMode::Words, 0});
    CHECK(words == std::vector<std::string>{"a", "a", "b"});
    auto coll = build_collection({words});
    REQUIRE(coll.records.size() == 1);
    CHECK(coll.records[0].tokens.size() == 2);
}

TEST_CASE("collection construction assigns rare-first ids and sorts records") {
    auto coll = build_collection({{"b", "a"}, {"a"}});
    REQUIRE(coll.token_text.size() == 2);
    CHECK(coll.token_text[0] == "b");  // frequency 1
    CHECK(coll.token_text[1] == "a");  // frequency 2
    CHECK(coll.token_frequency == std::vector<std::uint64_t>{1, 2});
    REQUIRE(coll.records.size() == 2);
    CHECK(coll.records[0].tokens == std::vector<TokenId>{1});
    CHECK(coll.records[1].tokens == std::vector<TokenId>{0, 1});
    CHECK(coll.records[0].id == 0);
    CHECK(coll.records[1].id == 1);
}

TEST_CASE("duplicate records are kept and adjacent") {
    auto coll = build_collection({{"x", "y"}, {"z"}, {"x", "y"}});
    REQUIRE(coll.records.size() == 3);
    CHECK(coll.records[1].tokens == coll.records[2].tokens);
}

TEST_CASE("single record collection") {
    auto coll = build_collection({{"q"}});
    REQUIRE(coll.records.size() == 1);
    CHECK(coll.records[0].tokens == std::vector<TokenId>{0});
}

TEST_CASE("record emptied by dedup is retained at size zero") {
    auto coll = build_collection({{}, {"a"}});
    REQUIRE(coll.records.size() == 2);
    CHECK(coll.records[0].tokens.empty());
    CHECK(coll.records[1].tokens.size() == 1);
}

TEST_CASE("id file parsing") {
    auto path = write_file("ids_basic.txt", "1 5 8\n3 4 5 6\n");
    auto coll = read_collection(path.string(), InputFormat::TokenIds);
    REQUIRE(coll.records.size() == 2);
    CHECK(coll.records[0].tokens == std::vector<TokenId>{1, 5, 8});
    CHECK(coll.records[1].tokens == std::vector<TokenId>{3, 4, 5, 6});
}

TEST_CASE("malformed id file reports the line") {
    auto path = write_file("ids_bad.txt", "1 x 3\n");
    CHECK_THROWS_WITH_AS(read_collection(path.string(), InputFormat::TokenIds),
                         doctest::Contains("line 1"), ParseError);

    auto path2 = write_file("ids_bad2.txt", "1 2\n7 -3\n");
    CHECK_THROWS_WITH_AS(read_collection(path2.string(), InputFormat::TokenIds),
                         doctest::Contains("line 2"), ParseError);

    CHECK_THROWS_AS(read_collection("/nonexistent/no/such/file", InputFormat::TokenIds), IoError);
}

TEST_CASE("write then read is the identity on canonical collections") {
    auto coll = build_collection({{"b", "a"}, {"a"}, {"c", "a", "b"}, {"d"}});
    auto path = temp_file("roundtrip.txt");
    write_collection(coll, path.string());
    auto again = read_collection(path.string(), InputFormat::TokenIds);
    REQUIRE(again.records.size() == coll.records.size());
    for (std::size_t i = 0; i < coll.records.size(); ++i)
        CHECK(again.records[i].tokens == coll.records[i].tokens);

    auto path2 = temp_file("roundtrip2.txt");
    write_collection(again, path2.string());
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("reading a non-canonical id file canonicalizes it") {
    auto path = write_file("ids_messy.txt", "5 3 3 1\n2\n");
    auto coll = read_collection(path.string(), InputFormat::TokenIds);
    REQUIRE(coll.records.size() == 2);
    CHECK(coll.records[0].tokens == std::vector<TokenId>{2});
    CHECK(coll.records[1].tokens == std::vector<TokenId>{1, 3, 5});
}

TEST_CASE("canonical record ordering holds on generated data") {
    GeneratorConfig cfg;
    cfg.distribution = GeneratorConfig::Uniform;
    cfg.num_sets = 2000;
    cfg.mean_size = 8;
    cfg.universe = 120;
    cfg.seed = 99;
    auto coll = generate(cfg);
    REQUIRE(coll.records.size() == 2000);
    for (std::size_t i = 0; i + 1 < coll.records.size(); ++i) {
        const auto& a = coll.records[i];
        const auto& b = coll.records[i + 1];
        bool ordered = a.tokens.size() < b.tokens.size() ||
                       (a.tokens.size() == b.tokens.size() && a.tokens <= b.tokens);
        CHECK(ordered);
        CHECK(a.id == i);
    }
    // Dictionary frequency monotone in the id.
    for (std::size_t i = 0; i + 1 < coll.token_frequency.size(); ++i)
        CHECK(coll.token_frequency[i] <= coll.token_frequency[i + 1]);
    for (const auto& r : coll.records)
        for (TokenId t : r.tokens) CHECK(t < coll.token_frequency.size());
}

TEST_CASE("generation is deterministic per seed") {
    GeneratorConfig cfg;
    cfg.distribution = GeneratorConfig::Zipf;
    cfg.num_sets = 500;
    cfg.mean_size = 12;
    cfg.universe = 5000;
    cfg.seed = 1234;
    auto a = generate(cfg);
    auto b = generate(cfg);
    std::ostringstream sa, sb;
    write_collection(a, sa);
    write_collection(b, sb);
    CHECK(sa.str() == sb.str());

    cfg.seed = 1235;
    auto c = generate(cfg);
    std::ostringstream sc;
    write_collection(c, sc);
    CHECK(sa.str() != sc.str());
}

TEST_CASE("uniform generator hits the configured size profile") {
    GeneratorConfig cfg;
    cfg.distribution = GeneratorConfig::Uniform;
    cfg.num_sets = 20000;
    cfg.mean_size = 10;
    cfg.universe = 220;
    cfg.seed = 7;
    auto coll = generate(cfg);
    CHECK(coll.mean_size() == doctest::Approx(10.0).epsilon(0.01));
    CHECK(coll.median_size() == 10);
    CHECK(coll.universe_size() <= 220);
}

TEST_CASE("zipf generator hits the configured size profile") {
    GeneratorConfig cfg;
    cfg.distribution = GeneratorConfig::Zipf;
    cfg.num_sets = 20000;
    cfg.mean_size = 50;
    cfg.universe = 200000;
    cfg.seed = 21;
    auto coll = generate(cfg);
    CHECK(coll.mean_size() == doctest::Approx(50.0).epsilon(0.01));
    CHECK(std::abs(coll.median_size() - 50) <= 1);
}

TEST_CASE("generator rejects degenerate configs and tiny universes survive") {
    GeneratorConfig bad;
    bad.num_sets = 0;
    bad.mean_size = 5;
    bad.universe = 10;
    CHECK_THROWS_AS(generate(bad), std::invalid_argument);

    GeneratorConfig tiny;
    tiny.distribution = GeneratorConfig::Zipf;
    tiny.num_sets = 50;
    tiny.mean_size = 30;  // often exceeds the universe; sizes truncate
    tiny.universe = 8;
    tiny.seed = 3;
    auto coll = generate(tiny);
    REQUIRE(coll.records.size() == 50);
    for (const auto& r : coll.records) {
        CHECK(r.tokens.size() >= 1);
        CHECK(r.tokens.size() <= 8);
    }

    GeneratorConfig one;
    one.num_sets = 1;
    one.mean_size = 4;
    one.universe = 100;
    CHECK(generate(one).records.size() == 1);
}

TEST_CASE("text mode file ingestion") {
    auto path = write_file("text.txt", "data warehouse\ndata base\n");
    auto coll = read_collection(path.string(), InputFormat::Text, {TokenizeMode::Words, 0});
    REQUIRE(coll.records.size() == 2);
    // "data" appears twice, the others once: the common token gets the top id.
    CHECK(coll.token_frequency.back() == 2);
    CHECK(coll.token_text.back() == "data");
}

TEST_CASE("empty records round-trip through files") {
    auto coll = build_collection({{}, {"a"}, {}});
    auto path = temp_file("empties.txt");
    write_collection(coll, path.string());
    auto again = read_collection(path.string(), InputFormat::TokenIds);
    REQUIRE(again.records.size() == 3);
    CHECK(again.records[0].tokens.empty());
    CHECK(again.records[1].tokens.empty());
    CHECK(again.records[2].tokens.size() == 1);
}

TEST_CASE("median of the size-sorted records") {
    auto coll = build_collection({{"a"}, {"a", "b"}, {"a", "b", "c"}});
    CHECK(coll.median_size() == 2);
    CHECK(build_collection({}).median_size() == 0);
}
