#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "semdirb/tokenize.hpp"
#include "semdirb/wordlist.hpp"

namespace semdirb {

using EmbeddingVector = std::vector<double>;

inline constexpr std::size_t kDefaultEmbeddingDim = 512;

/// One vector per wordlist entry, indexed by entry id.
struct EmbeddingSet {
    std::size_t dim = 0;
    std::vector<EmbeddingVector> vectors;
    std::string provenance;  // "exported" or "ngram-hash"

    std::size_t size() const { return vectors.size(); }
};

/// Marker used to pad words shorter than three characters to one 3-gram.
inline constexpr char kGramPad = '$';

/// Character 3-grams of one word after ASCII lower-casing. Words of length
/// >= 3 yield their sliding windows; shorter words are right-padded with
/// kGramPad to exactly one gram ("ab" -> "ab$", "a" -> "a$$").
std::vector<std::string> word_trigrams(std::string_view word);

/// Seeded 64-bit hash of one gram: mix64(fnv1a64(gram) ^ derive_seed(seed, 0)).
/// The low bits pick the coordinate (h % dim); the top bit picks the sign
/// (0 -> +1, 1 -> -1).
std::uint64_t gram_hash(std::string_view gram, std::uint64_t seed);

/// Feature-hashed bag of 3-grams over the non-punctuation words of
/// `sentence` (space separated), L2-normalized. Throws DataError when dim < 8
/// or when the sentence has no non-punctuation word. If signed collisions
/// cancel every coordinate, the coordinate of the first gram is set to +1 so
/// the vector is never zero.
EmbeddingVector embed_ngram_hash(std::string_view sentence, std::size_t dim, std::uint64_t seed);

/// Element-wise embed_ngram_hash, punctuation tokens excluded.
/// Provenance "ngram-hash". Errors name the failing entry id.
EmbeddingSet embed_all(const std::vector<TokenizedEntry>& tokenized, std::size_t dim, std::uint64_t seed);

double cosine(const EmbeddingVector& a, const EmbeddingVector& b);
double l2_norm(const EmbeddingVector& v);

/// Embedding file: line 1 `#dim=<D>`, further `#` comment lines allowed
/// (e.g. `#encoder=<id>`), then `<entry_id>\t<raw path>\t<v0> ... <vD-1>`.
/// Validated against `wordlist`: every entry covered exactly once with the
/// matching raw path, D values per row, all finite, non-zero norm.
EmbeddingSet load_embeddings(const std::filesystem::path& path, const Wordlist& wordlist);

/// Writes the embedding file with six fractional digits per value.
void save_embeddings(const EmbeddingSet& set, const Wordlist& wordlist, const std::filesystem::path& path);
std::string format_embeddings(const EmbeddingSet& set, const Wordlist& wordlist);

}  // namespace semdirb
