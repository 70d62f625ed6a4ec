#include "fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include <unistd.h>

#include "semdirb/rng.hpp"

namespace semdirb::testing {
namespace fs = std::filesystem;

FamilyCorpus make_family_corpus(const std::vector<std::size_t>& family_sizes, std::uint64_t seed) {
    constexpr std::string_view kLetters = "abcdefghijklmnopqrstuvwx";
    if (family_sizes.empty() || family_sizes.size() > 4) throw std::invalid_argument("1..4 families supported");
    const std::size_t slice = kLetters.size() / family_sizes.size();

    Rng rng(seed);
    FamilyCorpus corpus;
    std::vector<std::pair<std::string, Wordlist>> lists;
    for (std::size_t f = 0; f < family_sizes.size(); ++f) {
        const auto alphabet = kLetters.substr(f * slice, slice);
        auto word = [&](std::size_t len) {
            std::string w;
            for (std::size_t i = 0; i < len; ++i) w += alphabet[rng.below(alphabet.size())];
            return w;
        };
        std::vector<std::string> vocab;
        for (std::size_t i = 0; i < 12; ++i) vocab.push_back(word(4 + rng.below(4)));
        const std::string ext = word(3);

        std::set<std::string> seen;
        std::vector<std::string> paths;
        while (paths.size() < family_sizes[f]) {
            std::string p = "/" + vocab[rng.below(vocab.size())] + "/" + vocab[rng.below(vocab.size())] + "_" +
                            vocab[rng.below(vocab.size())] + "." + ext;
            if (seen.insert(p).second) paths.push_back(std::move(p));
        }
        corpus.paths.push_back(paths);
        lists.emplace_back("family" + std::to_string(f), Wordlist::from_paths(paths));
    }
    corpus.wordlist = merge_wordlists(lists, seed);
    return corpus;
}

std::vector<std::pair<std::string, std::vector<std::string>>> table1_families() {
    return {
        {"wp",
         {"/wp-login.php", "/wp-config.php", "/wp-cron.php", "/wp-signup.php", "/wp-links-opml.php",
          "/wp-content/plugins/wp-akismet.php", "/wp-includes/wp-db.php", "/wp-admin/wp-update.php"}},
        {"libraries",
         {"/libraries/joomla/github/github.ini", "/libraries/joomla/menu/menu.ini", "/libraries/joomla/form/form.ini",
          "/libraries/joomla/user/user.ini", "/libraries/vendor/joomla/vendor.ini",
          "/libraries/joomla/session/session.ini", "/libraries/joomla/cache/cache.ini",
          "/libraries/joomla/filter/filter.ini"}},
        {"images",
         {"/images/bricks.jpg", "/images/tabs/tabs_bg.gif", "/images/misc/tree.png", "/images/sprite.ico",
          "/images/banners/banner.jpg", "/images/headers/header.jpg", "/images/arrows/arrow.gif",
          "/images/misc/grass.png"}},
    };
}

std::vector<std::pair<std::string, Wordlist>> table2_corpora() {
    const std::vector<std::pair<std::string, std::size_t>> apps = {
        {"bodgeit", 40}, {"bricks", 66},  {"drupal", 1074},    {"dvws", 80},
        {"joomla", 4672}, {"wacko", 126}, {"wordpress", 1595}, {"xvwa", 722},
    };
    std::vector<std::pair<std::string, Wordlist>> out;
    for (const auto& [name, count] : apps) {
        std::vector<std::string> paths;
        for (std::size_t i = 0; i < count; ++i) paths.push_back("/" + name + "/page_" + std::to_string(i) + ".php");
        out.emplace_back(name, Wordlist::from_paths(paths));
    }
    return out;
}

EmbeddingSet points(const std::vector<std::vector<double>>& pts) {
    EmbeddingSet set;
    set.dim = pts.empty() ? 0 : pts.front().size();
    set.vectors = pts;
    set.provenance = "test";
    return set;
}

double gaussian(Rng& rng) {
    double u1 = rng.unit();
    while (u1 <= 0.0) u1 = rng.unit();
    const double u2 = rng.unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

EmbeddingSet gaussian_blobs(const std::vector<std::vector<double>>& centres, std::size_t per_cluster, double sigma,
                            std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> pts;
    for (const auto& c : centres)
        for (std::size_t i = 0; i < per_cluster; ++i) {
            std::vector<double> p = c;
            for (auto& x : p) x += sigma * gaussian(rng);
            pts.push_back(std::move(p));
        }
    return points(pts);
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto dir = fs::path(temp_dir("f"));
    const auto path = dir / name;
    std::ofstream(path, std::ios::binary) << content;
    return path.string();
}

std::string temp_dir(const std::string& name) {
    static std::size_t counter = 0;
    const auto base = fs::temp_directory_path() / "semdirb-tests";
    for (;;) {
        auto dir = base / (name + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        if (fs::create_directories(dir)) return dir.string();
    }
}

}  // namespace semdirb::testing
