#pragma once

#include <string>
#include <vector>

#include "semdirb/rng.hpp"
#include "semdirb/wordlist.hpp"

namespace semdirb::bench {

// Plausible-looking paths built from a small vocabulary.
inline Wordlist synthetic_wordlist(std::size_t n, std::uint64_t seed = 1) {
    static const std::vector<std::string> words = {
        "admin", "login", "wp", "content", "includes", "images", "Upload", "config", "backup", "api", "v2",
        "UserProfile", "assets", "js", "css", "index", "cache", "tmp", "XMLRpc", "joomla", "modules", "theme"};
    static const std::vector<std::string> exts = {".php", ".js", ".css", ".html", ".ini", ""};
    Rng rng(seed);
    std::vector<std::string> paths;
    while (paths.size() < n) {
        std::string p;
        const auto depth = 1 + rng.below(3);
        for (std::uint64_t d = 0; d < depth; ++d) {
            p += "/" + words[rng.below(words.size())];
            if (rng.below(3) == 0) p += (rng.below(2) ? "_" : "-") + words[rng.below(words.size())];
        }
        p += exts[rng.below(exts.size())] + std::to_string(paths.size());
        paths.push_back(p);
    }
    return Wordlist::from_paths(paths);
}

}  // namespace semdirb::bench
