#include "semdirb/wordlist.hpp"

#include <string>

#include "semdirb/error.hpp"
#include "semdirb/rng.hpp"
#include "text_io.hpp"

namespace semdirb {

std::string normalize_path(std::string_view raw) {
    if (raw.empty()) throw DataError("empty path");
    if (raw.find_first_of("\r\n\t") != std::string_view::npos)
        throw DataError("path contains a newline or tab: " + std::string(raw));
    if (raw.front() == '/') return std::string(raw);
    std::string out;
    out.reserve(raw.size() + 1);
    out += '/';
    out += raw;
    return out;
}

void Wordlist::push(std::string raw) {
    if (index_.find(raw) != index_.end()) return;
    const EntryId id = entries_.size();
    index_.emplace(raw, id);
    entries_.push_back(PathEntry{std::move(raw), id});
}

Wordlist Wordlist::from_paths(const std::vector<std::string>& paths) {
    Wordlist wl;
    for (const auto& p : paths) wl.push(normalize_path(p));
    return wl;
}

std::optional<EntryId> Wordlist::find(std::string_view raw) const {
    auto it = index_.find(raw);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> Wordlist::source_label(EntryId id) const {
    auto it = labels_.find(id);
    if (it == labels_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Wordlist::raw_paths() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.raw);
    return out;
}

Wordlist load_wordlist(const std::filesystem::path& path) {
    const std::string text = detail::read_file(path);
    if (!detail::is_valid_utf8(text)) throw DataError("wordlist is not valid UTF-8: " + path.string());
    std::vector<std::string> paths;
    for (auto line : detail::split_lines(text)) {
        if (line.empty() || line.front() == '#') continue;
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        paths.emplace_back(line);
    }
    Wordlist wl = Wordlist::from_paths(paths);
    if (wl.empty()) throw DataError("wordlist has no entries: " + path.string());
    return wl;
}

void save_wordlist(const Wordlist& wordlist, const std::filesystem::path& path) {
    std::string out;
    for (const auto& e : wordlist.entries()) {
        out += e.raw;
        out += '\n';
    }
    detail::write_file(path, out);
}

void save_source_labels(const Wordlist& wordlist, const std::filesystem::path& path) {
    std::string out;
    for (const auto& [id, label] : wordlist.source_labels()) {
        out += std::to_string(id);
        out += '\t';
        out += label;
        out += '\t';
        out += wordlist[id].raw;
        out += '\n';
    }
    detail::write_file(path, out);
}

Wordlist load_source_labels(Wordlist wordlist, const std::filesystem::path& path) {
    const std::string text = detail::read_file(path);
    std::map<EntryId, std::string> labels;
    std::size_t lineno = 0;
    for (auto line : detail::split_lines(text)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cols = detail::split(line, '\t');
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (cols.size() != 3) throw DataError("expected 3 tab-separated columns at " + where);
        const auto id = detail::parse_uint(cols[0], where);
        if (id >= wordlist.size() || wordlist[id].raw != cols[2])
            throw CoverageError("label row does not match wordlist entry at " + where);
        labels[id] = std::string(cols[1]);
    }
    return with_labels(std::move(wordlist), std::move(labels));
}

Wordlist merge_wordlists(const std::vector<std::pair<std::string, Wordlist>>& lists,
                         std::uint64_t seed) {
    if (lists.empty()) throw DataError("merge needs at least one wordlist");
    Wordlist merged;
    for (const auto& [name, wl] : lists) {
        for (const auto& e : wl.entries()) {
            const auto before = merged.size();
            merged.push(e.raw);
            if (merged.size() != before) merged.labels_[before] = name;
        }
    }
    return shuffle(merged, seed);
}

Wordlist shuffle(const Wordlist& wordlist, std::uint64_t seed) {
    Rng rng(seed);
    const auto order = seeded_permutation(wordlist.size(), rng);
    Wordlist out;
    for (EntryId old_id : order) {
        const EntryId new_id = out.size();
        out.push(wordlist[old_id].raw);
        if (auto label = wordlist.source_label(old_id)) out.labels_[new_id] = *label;
    }
    return out;
}

Wordlist with_labels(Wordlist wordlist, std::map<EntryId, std::string> labels) {
    for (const auto& [id, label] : labels)
        if (id >= wordlist.size()) throw DataError("source label for unknown entry id " + std::to_string(id));
    wordlist.labels_ = std::move(labels);
    return wordlist;
}

}  // namespace semdirb
