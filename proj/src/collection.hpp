#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "types.hpp"

namespace ssj {

/// Raised for unreadable or malformed input files; the message names the
/// offending line when one is known.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A canonical collection: records sorted by (size, token sequence), token
/// ids dense and frequency-ordered. Immutable once built; safe to share
/// across join workers.
struct TokenizedCollection {
    std::vector<RecordSet> records;
    // id -> raw token text; empty when the collection came from an id file
    // (the ids are then their own names).
    std::vector<std::string> token_text;
    // id -> number of records containing the token.
    std::vector<std::uint64_t> token_frequency;

    std::size_t size() const { return records.size(); }
    TokenId universe_size() const { return static_cast<TokenId>(token_frequency.size()); }
    bool has_text() const { return !token_text.empty(); }

    /// Lower median of the record sizes (0 for an empty collection).
    std::int64_t median_size() const;
    double mean_size() const;
};

struct TokenizeMode {
    enum Kind { Words, QGrams } kind = Words;
    int q = 2;
};

/// Splits text into raw tokens. Words mode splits on whitespace; q-gram mode
/// emits every overlapping q-character substring (spaces included). Order and
/// duplicates are preserved; set semantics are applied downstream.
std::vector<std::string> tokenize(const std::string& text, const TokenizeMode& mode);

/// Builds a canonical collection from raw token sequences: counts per-record
/// token occurrences, assigns ids rarest-first (ties by token text), dedups
/// within each record, sorts tokens, then sorts records by (size, sequence).
/// Records that become empty are kept with size 0.
TokenizedCollection build_collection(const std::vector<std::vector<std::string>>& raw_records);

enum class InputFormat { TokenIds, Text };

/// Reads a collection file. TokenIds mode parses one record of integer ids
/// per line (ids are taken as-is, records are deduped/sorted and the
/// collection is put in canonical order). Text mode tokenizes each line and
/// builds the dictionary from scratch.
TokenizedCollection read_collection(const std::string& path, InputFormat format,
                                    const TokenizeMode& mode = {});

/// Writes the canonical id form: one record per line, ascending ids separated
/// by single spaces. read(TokenIds) of the output reproduces the collection
/// byte for byte.
void write_collection(const TokenizedCollection& collection, const std::string& path);
void write_collection(const TokenizedCollection& collection, std::ostream& out);

struct GeneratorConfig {
    enum Distribution { Uniform, Zipf } distribution = Uniform;
    std::int64_t num_sets = 0;
    double mean_size = 0.0;     // Poisson mean; zero-size draws are rejected
    std::int64_t universe = 0;  // distinct token count
    std::uint64_t seed = 0;
    double zipf_exponent = 1.0;
};

/// Synthetic collection: per record, a nonzero Poisson size and that many
/// distinct tokens drawn from the universe (uniformly, or Zipf over token
/// ranks). Deterministic for a given config. Output is canonicalized via
/// build_collection.
TokenizedCollection generate(const GeneratorConfig& config);

}  // namespace ssj
