#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semdirb/embed.hpp"
#include "semdirb/rng.hpp"
#include "semdirb/wordlist.hpp"

namespace semdirb::testing {

/// Synthetic corpus of path "families". Each family draws its words from its
/// own slice of the alphabet, so families share no character 3-gram.
struct FamilyCorpus {
    Wordlist wordlist;                             // merged and shuffled, labelled "family<f>"
    std::vector<std::vector<std::string>> paths;  // per family
};

FamilyCorpus make_family_corpus(const std::vector<std::size_t>& family_sizes, std::uint64_t seed);

/// Three small hand-written path families (wp-*,
/// libraries/joomla/*, images/*) with disjoint 3-gram vocabularies.
std::vector<std::pair<std::string, std::vector<std::string>>> table1_families();

/// Eight distinct-path corpora sized like real per-application wordlist
/// counts (40, 66, 1074, 80, 4672, 126, 1595, 722; total 8375).
std::vector<std::pair<std::string, Wordlist>> table2_corpora();

/// Embedding set wrapping raw points (no normalization).
EmbeddingSet points(const std::vector<std::vector<double>>& pts);

/// Standard normal via Box-Muller over semdirb::Rng.
double gaussian(Rng& rng);

/// `per_cluster` points around each centre with isotropic std `sigma`.
EmbeddingSet gaussian_blobs(const std::vector<std::vector<double>>& centres, std::size_t per_cluster, double sigma,
                            std::uint64_t seed);

/// Writes `content` to a fresh file under the system temp directory.
std::string temp_file(const std::string& name, const std::string& content);
/// Fresh empty directory under the system temp directory.
std::string temp_dir(const std::string& name);

}  // namespace semdirb::testing
