#include "collection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

namespace ssj {

std::int64_t TokenizedCollection::median_size() const {
    if (records.empty()) return 0;
    // Records are size-sorted, so the median is a direct lookup.
    return records[(records.size() - 1) / 2].size();
}

double TokenizedCollection::mean_size() const {
    if (records.empty()) return 0.0;
    std::uint64_t total = 0;
    for (const auto& r : records) total += r.tokens.size();
    return static_cast<double>(total) / static_cast<double>(records.size());
}

std::vector<std::string> tokenize(const std::string& text, const TokenizeMode& mode) {
    std::vector<std::string> out;
    if (mode.kind == TokenizeMode::Words) {
        std::istringstream in(text);
        std::string word;
        while (in >> word) out.push_back(word);
        return out;
    }
    if (mode.q < 1) throw std::invalid_argument("q-gram size must be >= 1");
    const std::size_t q = static_cast<std::size_t>(mode.q);
    if (text.size() < q) return out;
    out.reserve(text.size() - q + 1);
    for (std::size_t i = 0; i + q <= text.size(); ++i) out.push_back(text.substr(i, q));
    return out;
}

namespace {

void canonicalize_records(std::vector<RecordSet>& records) {
    for (auto& r : records) {
        std::sort(r.tokens.begin(), r.tokens.end());
        r.tokens.erase(std::unique(r.tokens.begin(), r.tokens.end()), r.tokens.end());
    }
    std::sort(records.begin(), records.end(), [](const RecordSet& a, const RecordSet& b) {
        if (a.tokens.size() != b.tokens.size()) return a.tokens.size() < b.tokens.size();
        return a.tokens < b.tokens;
    });
    for (std::size_t i = 0; i < records.size(); ++i) records[i].id = static_cast<std::uint32_t>(i);
}

}  // namespace

TokenizedCollection build_collection(const std::vector<std::vector<std::string>>& raw_records) {
    // Dedup within each record first; frequency counts record membership.
    std::vector<std::vector<std::string>> sets(raw_records);
    std::map<std::string, std::uint64_t> freq;
    for (auto& rec : sets) {
        std::sort(rec.begin(), rec.end());
        rec.erase(std::unique(rec.begin(), rec.end()), rec.end());
        for (const auto& tok : rec) ++freq[tok];
    }

    // Rarest token gets the smallest id; ties break on the token text,
    // which std::map order already provides.
    std::vector<std::pair<std::string, std::uint64_t>> order(freq.begin(), freq.end());
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });

    TokenizedCollection coll;
    coll.token_text.reserve(order.size());
    coll.token_frequency.reserve(order.size());
    std::map<std::string, TokenId> ids;
    for (const auto& [text, count] : order) {
        ids.emplace(text, static_cast<TokenId>(coll.token_text.size()));
        coll.token_text.push_back(text);
        coll.token_frequency.push_back(count);
    }

    coll.records.reserve(sets.size());
    for (const auto& rec : sets) {
        RecordSet r;
        r.tokens.reserve(rec.size());
        for (const auto& tok : rec) r.tokens.push_back(ids.at(tok));
        coll.records.push_back(std::move(r));
    }
    canonicalize_records(coll.records);
    return coll;
}

namespace {

TokenizedCollection read_id_lines(std::istream& in) {
    TokenizedCollection coll;
    std::string line;
    std::size_t line_no = 0;
    TokenId max_id = 0;
    bool any_token = false;
    while (std::getline(in, line)) {
        ++line_no;
        RecordSet r;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && line[pos] == ' ') ++pos;
            if (pos >= line.size()) break;
            std::size_t end = pos;
            std::uint64_t value = 0;
            while (end < line.size() && line[end] != ' ') {
                char c = line[end];
                if (c < '0' || c > '9' || value > 0xFFFFFFFFull)
                    throw ParseError("parse error at line " + std::to_string(line_no) +
                                     ": expected a token id");
                value = value * 10 + static_cast<std::uint64_t>(c - '0');
                ++end;
            }
            if (value > 0xFFFFFFFFull)
                throw ParseError("parse error at line " + std::to_string(line_no) +
                                 ": token id out of range");
            r.tokens.push_back(static_cast<TokenId>(value));
            max_id = std::max(max_id, static_cast<TokenId>(value));
            any_token = true;
            pos = end;
        }
        coll.records.push_back(std::move(r));
    }
    canonicalize_records(coll.records);
    if (any_token) {
        coll.token_frequency.assign(static_cast<std::size_t>(max_id) + 1, 0);
        for (const auto& r : coll.records)
            for (TokenId t : r.tokens) ++coll.token_frequency[t];
    }
    return coll;
}

}  // namespace

TokenizedCollection read_collection(const std::string& path, InputFormat format,
                                    const TokenizeMode& mode) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    if (format == InputFormat::TokenIds) return read_id_lines(in);

    std::vector<std::vector<std::string>> raw;
    std::string line;
    while (std::getline(in, line)) raw.push_back(tokenize(line, mode));
    return build_collection(raw);
}

void write_collection(const TokenizedCollection& collection, std::ostream& out) {
    for (const auto& r : collection.records) {
        for (std::size_t i = 0; i < r.tokens.size(); ++i) {
            if (i) out << ' ';
            out << r.tokens[i];
        }
        out << '\n';
    }
}

void write_collection(const TokenizedCollection& collection, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_collection(collection, out);
    if (!out) throw IoError("write failed for " + path);
}

namespace {

// Deterministic uniform double in [0, 1) built from the top 53 bits of the
// generator output, identical across platforms for a fixed seed.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Knuth's method; fine for the mean sizes used here. long double keeps the
// running product away from underflow for large means.
std::int64_t poisson_draw(std::mt19937_64& rng, double mean) {
    long double limit = std::exp(static_cast<long double>(-mean));
    std::int64_t k = 0;
    long double p = 1.0L;
    do {
        ++k;
        p *= static_cast<long double>(uniform01(rng));
    } while (p > limit);
    return k - 1;
}

}  // namespace

TokenizedCollection generate(const GeneratorConfig& config) {
    if (config.num_sets <= 0) throw std::invalid_argument("generator: num_sets must be > 0");
    if (config.mean_size <= 0) throw std::invalid_argument("generator: mean_size must be > 0");
    if (config.universe <= 0) throw std::invalid_argument("generator: universe must be > 0");

    std::mt19937_64 rng(config.seed);

    // Zipf draws go through the cumulative rank weights.
    std::vector<double> cumulative;
    if (config.distribution == GeneratorConfig::Zipf) {
        cumulative.resize(static_cast<std::size_t>(config.universe));
        double total = 0.0;
        for (std::int64_t k = 0; k < config.universe; ++k) {
            total += 1.0 / std::pow(static_cast<double>(k + 1), config.zipf_exponent);
            cumulative[static_cast<std::size_t>(k)] = total;
        }
        for (auto& c : cumulative) c /= total;
    }

    auto draw_token = [&]() -> std::int64_t {
        if (config.distribution == GeneratorConfig::Uniform) {
            // Rejection keeps the draw unbiased for any universe size.
            std::uint64_t span = static_cast<std::uint64_t>(config.universe);
            std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                  std::numeric_limits<std::uint64_t>::max() % span;
            std::uint64_t v;
            do { v = rng(); } while (v >= limit);
            return static_cast<std::int64_t>(v % span);
        }
        double u = uniform01(rng);
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        return static_cast<std::int64_t>(it - cumulative.begin());
    };

    std::vector<std::vector<std::string>> raw;
    raw.reserve(static_cast<std::size_t>(config.num_sets));
    std::unordered_set<std::int64_t> drawn;
    for (std::int64_t i = 0; i < config.num_sets; ++i) {
        std::int64_t size = 0;
        while (size == 0) size = poisson_draw(rng, config.mean_size);
        size = std::min(size, config.universe);

        drawn.clear();
        // A draw budget guards against a skewed tail when size approaches the
        // universe; leftovers are filled with the smallest unused ranks.
        std::int64_t attempts = 0;
        const std::int64_t budget = 1000 * size + 1000;
        while (static_cast<std::int64_t>(drawn.size()) < size && attempts < budget) {
            drawn.insert(draw_token());
            ++attempts;
        }
        for (std::int64_t t = 0; static_cast<std::int64_t>(drawn.size()) < size; ++t)
            drawn.insert(t);

        std::vector<std::string> rec;
        rec.reserve(drawn.size());
        for (std::int64_t t : drawn) rec.push_back(std::to_string(t));
        raw.push_back(std::move(rec));
    }
    return build_collection(raw);
}

}  // namespace ssj
