#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semdirb {

using EntryId = std::size_t;

/// A candidate server path. `raw` always starts with '/'.
struct PathEntry {
    std::string raw;
    EntryId id = 0;

    friend bool operator==(const PathEntry&, const PathEntry&) = default;
};

/// Prepends '/' when missing. Throws DataError for empty input or input
/// containing a newline or tab (tab is the column separator of every TSV
/// artifact).
std::string normalize_path(std::string_view raw);

/// Ordered, deduplicated (case-sensitive) collection of paths. Ids are the
/// positions 0..size()-1. Immutable once built; safe to share read-only.
class Wordlist {
public:
    Wordlist() = default;

    /// Normalizes and deduplicates, keeping the first occurrence.
    static Wordlist from_paths(const std::vector<std::string>& paths);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const PathEntry& operator[](EntryId id) const { return entries_[id]; }
    const std::vector<PathEntry>& entries() const { return entries_; }

    std::optional<EntryId> find(std::string_view raw) const;

    /// Name of the corpus an entry came from, when known.
    std::optional<std::string> source_label(EntryId id) const;
    const std::map<EntryId, std::string>& source_labels() const { return labels_; }

    std::vector<std::string> raw_paths() const;

    friend bool operator==(const Wordlist&, const Wordlist&) = default;

private:
    friend Wordlist merge_wordlists(const std::vector<std::pair<std::string, Wordlist>>&,
                                    std::uint64_t);
    friend Wordlist shuffle(const Wordlist&, std::uint64_t);
    friend Wordlist with_labels(Wordlist, std::map<EntryId, std::string>);

    void push(std::string raw);

    std::vector<PathEntry> entries_;
    std::map<std::string, EntryId, std::less<>> index_;
    std::map<EntryId, std::string> labels_;
};

/// Reads a UTF-8 wordlist file: one path per line, LF or CRLF, blank lines
/// and lines starting with '#' ignored. Duplicates keep their first
/// occurrence. Throws DataError when unreadable, not UTF-8, or empty.
Wordlist load_wordlist(const std::filesystem::path& path);

/// Writes one raw path per line, LF endings, in id order.
void save_wordlist(const Wordlist& wordlist, const std::filesystem::path& path);

/// Source-label sidecar: `entry_id<TAB>label<TAB>raw` per labelled entry.
void save_source_labels(const Wordlist& wordlist, const std::filesystem::path& path);
Wordlist load_source_labels(Wordlist wordlist, const std::filesystem::path& path);

/// Union of all lists (first contributor wins on duplicates, and its name
/// becomes the entry's source label), then a seeded shuffle. Throws
/// DataError when `lists` is empty.
Wordlist merge_wordlists(const std::vector<std::pair<std::string, Wordlist>>& lists,
                         std::uint64_t seed);

/// Seeded permutation of the entries. Ids are reassigned in the new order and
/// source labels follow their entries.
Wordlist shuffle(const Wordlist& wordlist, std::uint64_t seed);

/// Replaces the label map. Keys must be valid ids.
Wordlist with_labels(Wordlist wordlist, std::map<EntryId, std::string> labels);

}  // namespace semdirb
