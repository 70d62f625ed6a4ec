#include "semdirb/embed.hpp"

#include <cmath>

#include "semdirb/error.hpp"
#include "semdirb/rng.hpp"
#include "text_io.hpp"

namespace semdirb {
namespace {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::vector<std::string_view> content_words(std::string_view sentence) {
    std::vector<std::string_view> words;
    for (auto w : detail::split(sentence, ' ')) {
        if (w.empty() || is_punctuation_token(w)) continue;
        words.push_back(w);
    }
    return words;
}

EmbeddingVector embed_words(const std::vector<std::string_view>& words, std::size_t dim, std::uint64_t seed) {
    if (dim < 8) throw DataError("embedding dimension must be at least 8, got " + std::to_string(dim));
    if (words.empty()) throw DataError("sentence has no non-punctuation words");
    EmbeddingVector v(dim, 0.0);
    std::size_t first_index = 0;
    bool first = true;
    for (auto w : words) {
        for (const auto& gram : word_trigrams(w)) {
            const auto h = gram_hash(gram, seed);
            const auto idx = static_cast<std::size_t>(h % dim);
            if (first) {
                first_index = idx;
                first = false;
            }
            v[idx] += (h >> 63) ? -1.0 : 1.0;
        }
    }
    const double norm = l2_norm(v);
    if (norm == 0.0) {
        v[first_index] = 1.0;
        return v;
    }
    for (auto& x : v) x /= norm;
    return v;
}

}  // namespace

std::vector<std::string> word_trigrams(std::string_view word) {
    std::string lower(word);
    for (auto& c : lower) c = ascii_lower(c);
    std::vector<std::string> grams;
    if (lower.size() < 3) {
        lower.resize(3, kGramPad);
        grams.push_back(lower);
        return grams;
    }
    for (std::size_t i = 0; i + 3 <= lower.size(); ++i) grams.push_back(lower.substr(i, 3));
    return grams;
}

std::uint64_t gram_hash(std::string_view gram, std::uint64_t seed) {
    return mix64(fnv1a64(gram) ^ derive_seed(seed, 0));
}

EmbeddingVector embed_ngram_hash(std::string_view sentence, std::size_t dim, std::uint64_t seed) {
    return embed_words(content_words(sentence), dim, seed);
}

EmbeddingSet embed_all(const std::vector<TokenizedEntry>& tokenized, std::size_t dim, std::uint64_t seed) {
    EmbeddingSet set;
    set.dim = dim;
    set.provenance = "ngram-hash";
    set.vectors.reserve(tokenized.size());
    for (const auto& te : tokenized) {
        if (te.entry_id != set.vectors.size())
            throw DataError("tokenized entries must be in id order; got id " + std::to_string(te.entry_id));
        std::vector<std::string_view> words;
        for (const auto& t : te.tokens)
            if (!is_punctuation_token(t)) words.push_back(t);
        try {
            set.vectors.push_back(embed_words(words, dim, seed));
        } catch (const DataError& e) {
            throw DataError("entry " + std::to_string(te.entry_id) + " ('" + te.sentence + "'): " + e.what());
        }
    }
    return set;
}

double l2_norm(const EmbeddingVector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size()) throw DataError("cosine of vectors with different dimensions");
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    const double na = l2_norm(a);
    const double nb = l2_norm(b);
    if (na == 0.0 || nb == 0.0) throw DataError("cosine of a zero vector");
    return dot / (na * nb);
}

EmbeddingSet load_embeddings(const std::filesystem::path& path, const Wordlist& wordlist) {
    const std::string text = detail::read_file(path);
    if (!detail::is_valid_utf8(text)) throw DataError("embedding file is not valid UTF-8: " + path.string());
    const auto lines = detail::split_lines(text);
    if (lines.empty() || !lines[0].starts_with("#dim="))
        throw DataError("embedding file must start with '#dim=<D>': " + path.string());

    EmbeddingSet set;
    set.provenance = "exported";
    const auto dim = detail::parse_uint(lines[0].substr(5), path.string() + ":1 (#dim)");
    if (dim == 0) throw DataError("embedding dimension must be positive: " + path.string());
    set.dim = static_cast<std::size_t>(dim);

    std::vector<bool> seen(wordlist.size(), false);
    set.vectors.assign(wordlist.size(), {});
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const auto line = lines[ln];
        if (line.empty() || line.front() == '#') continue;
        const std::string where = path.string() + ":" + std::to_string(ln + 1);
        const auto cols = detail::split(line, '\t');
        if (cols.size() != 3) throw DataError("expected 3 tab-separated columns at " + where);
        const auto id = detail::parse_uint(cols[0], where);
        if (id >= wordlist.size())
            throw CoverageError("entry id " + std::to_string(id) + " not in wordlist at " + where);
        if (wordlist[id].raw != cols[1])
            throw CoverageError("entry " + std::to_string(id) + " is '" + wordlist[id].raw +
                                "' in the wordlist but '" + std::string(cols[1]) + "' at " + where);
        if (seen[id]) throw DataError("duplicate entry id " + std::to_string(id) + " at " + where);
        seen[id] = true;

        EmbeddingVector v;
        v.reserve(set.dim);
        for (auto tok : detail::split(cols[2], ' ')) {
            if (tok.empty()) continue;
            const double x = detail::parse_double(tok, where);
            if (!std::isfinite(x)) throw DataError("non-finite value at " + where);
            v.push_back(x);
        }
        if (v.size() != set.dim)
            throw DataError("dimension mismatch at " + where + ": expected " + std::to_string(set.dim) +
                            " values, found " + std::to_string(v.size()));
        if (l2_norm(v) == 0.0) throw DataError("zero vector at " + where);
        set.vectors[id] = std::move(v);
    }
    for (EntryId id = 0; id < wordlist.size(); ++id)
        if (!seen[id])
            throw CoverageError("embedding file " + path.string() + " has no vector for entry " +
                                std::to_string(id) + " '" + wordlist[id].raw + "'");
    return set;
}

std::string format_embeddings(const EmbeddingSet& set, const Wordlist& wordlist) {
    if (set.size() != wordlist.size()) throw CoverageError("embedding set does not match wordlist size");
    std::string out = "#dim=" + std::to_string(set.dim) + "\n";
    for (EntryId id = 0; id < set.size(); ++id) {
        out += std::to_string(id);
        out += '\t';
        out += wordlist[id].raw;
        out += '\t';
        const auto& v = set.vectors[id];
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (j) out += ' ';
            out += detail::format_fixed6(v[j]);
        }
        out += '\n';
    }
    return out;
}

void save_embeddings(const EmbeddingSet& set, const Wordlist& wordlist, const std::filesystem::path& path) {
    detail::write_file(path, format_embeddings(set, wordlist));
}

}  // namespace semdirb
