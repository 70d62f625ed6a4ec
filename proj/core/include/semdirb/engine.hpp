#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "semdirb/cluster.hpp"
#include "semdirb/error.hpp"
#include "semdirb/rng.hpp"
#include "semdirb/wordlist.hpp"

namespace semdirb {

enum class Strategy { bruteforce, clustered };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view s);

/// Stay in a cluster until its pool is exhausted.
inline constexpr std::size_t kUnlimitedMisses = std::numeric_limits<std::size_t>::max();

enum class TargetKind { http, simulated };

/// Something that answers a path with an HTTP status code.
class Target {
public:
    virtual ~Target() = default;

    virtual TargetKind kind() const = 0;
    /// Human-readable descriptor, e.g. "http://host:8080" or "simulated:corpus".
    virtual std::string describe() const = 0;
    /// Short filesystem-safe name used for experiment directories.
    virtual std::string name() const = 0;
    /// URL (http) or path (simulated) that a probe of `entry` addresses.
    virtual std::string locate(const PathEntry& entry) const = 0;
    /// Status code for one request. Throws TransportError when the target
    /// cannot be reached.
    virtual int status_for(const PathEntry& entry) = 0;
    /// Whether concurrent repetitions may share this target.
    virtual bool concurrent_safe() const { return false; }
};

/// In-process target: 200 for a path in the valid set, 404 otherwise.
class SimulatedTarget final : public Target {
public:
    SimulatedTarget(std::string name, const std::vector<std::string>& valid_paths,
                    std::chrono::microseconds latency = std::chrono::microseconds{0});

    TargetKind kind() const override { return TargetKind::simulated; }
    std::string describe() const override { return "simulated:" + name_; }
    std::string name() const override { return name_; }
    std::string locate(const PathEntry& entry) const override { return entry.raw; }
    int status_for(const PathEntry& entry) override;
    bool concurrent_safe() const override { return true; }

    bool is_valid(std::string_view raw) const;
    std::size_t valid_count() const { return valid_.size(); }
    /// |valid ∩ wordlist|.
    std::size_t valid_in(const Wordlist& wordlist) const;

private:
    std::string name_;
    std::unordered_set<std::string> valid_;
    std::chrono::microseconds latency_;
};

/// Reads a simulated target from a wordlist-format file of valid paths. The
/// target is named after the file stem.
std::unique_ptr<SimulatedTarget> load_simulated_target(const std::filesystem::path& path,
                                                       std::chrono::microseconds latency = {});

struct HttpOptions {
    std::size_t retries = 3;  // extra attempts after the first failure
    std::chrono::milliseconds timeout{5000};
    bool verify_tls = true;
    std::string user_agent = "semdirb/0.1";
};

/// Live HTTP(S) target. Issues GET base_url + raw path, never follows
/// redirects and never inspects the body.
class HttpTarget final : public Target {
public:
    /// Throws DataError unless `base_url` is http:// or https:// with a host.
    explicit HttpTarget(std::string base_url, HttpOptions options = {});
    ~HttpTarget() override;
    HttpTarget(const HttpTarget&) = delete;
    HttpTarget& operator=(const HttpTarget&) = delete;

    TargetKind kind() const override { return TargetKind::http; }
    std::string describe() const override { return base_url_; }
    std::string name() const override;
    std::string locate(const PathEntry& entry) const override;
    int status_for(const PathEntry& entry) override;

private:
    struct Impl;
    std::string base_url_;
    std::string origin_;     // scheme://host[:port]
    std::string base_path_;  // without trailing '/'
    HttpOptions options_;
    std::unique_ptr<Impl> impl_;
};

/// Builds an HttpTarget for http(s) URLs, otherwise loads a simulated target
/// from the file `location`.
std::unique_ptr<Target> make_target(const std::string& location, const HttpOptions& http = {},
                                    std::chrono::microseconds simulated_latency = {});

struct ProbeOutcome {
    EntryId entry_id = 0;
    std::string url_or_path;
    int status_code = 0;
    bool valid = false;  // status_code != 404
    std::size_t sequence_index = 0;
    std::optional<std::size_t> cluster;

    friend bool operator==(const ProbeOutcome&, const ProbeOutcome&) = default;
};

/// One request. Any status other than 404 is a discovery.
ProbeOutcome probe(Target& target, const PathEntry& entry, std::size_t sequence_index);

struct RunLog {
    Strategy strategy = Strategy::bruteforce;
    std::uint64_t seed = 0;
    std::string target;
    std::vector<ProbeOutcome> outcomes;

    /// cumulative_valid()[i] = number of valid outcomes among 0..i.
    std::vector<std::size_t> cumulative_valid() const;
    std::size_t valid_count() const;

    friend bool operator==(const RunLog&, const RunLog&) = default;
};

/// Raised when a probe fails after all retries. Carries the log up to (not
/// including) the failed probe.
class RunAborted : public TransportError {
public:
    RunAborted(const std::string& what, RunLog partial) : TransportError(what), partial_(std::move(partial)) {}
    const RunLog& partial() const { return partial_; }

private:
    RunLog partial_;
};

/// Next-word scheduler for the cluster-guided strategy.
///
/// With no current cluster it draws uniformly from all unprobed entries; a
/// valid hit makes the hit's cluster current. Inside a cluster it draws
/// uniformly from that cluster's unprobed entries. The cluster is left when
/// its pool empties or after `miss_threshold` consecutive misses.
///
/// Draws use the same swap-remove procedure as seeded_permutation(), so a
/// one-cluster model yields exactly the brute-force order for the same seed.
class ClusterScheduler {
public:
    ClusterScheduler(const ClusterModel& model, std::uint64_t seed, std::size_t miss_threshold = kUnlimitedMisses);

    bool done() const { return global_.empty(); }
    std::size_t remaining() const { return global_.size(); }
    std::optional<std::size_t> current_cluster() const { return current_; }
    std::size_t consecutive_misses() const { return misses_; }
    std::size_t pool_size(std::size_t cluster) const { return pools_[cluster].size(); }
    std::size_t cluster_of(EntryId id) const { return cluster_of_[id]; }

    /// Picks and removes the next entry. Must alternate with report().
    EntryId next();
    /// Feeds back whether the entry returned by the last next() was valid.
    void report(bool valid);

private:
    void remove(EntryId id);

    std::vector<std::size_t> cluster_of_;
    std::vector<EntryId> global_;
    std::vector<std::size_t> global_pos_;
    std::vector<std::vector<EntryId>> pools_;
    std::vector<std::size_t> pool_pos_;
    std::optional<std::size_t> current_;
    std::size_t misses_ = 0;
    std::size_t miss_threshold_;
    std::optional<EntryId> pending_;
    Rng rng_;
};

/// Probes every entry in seeded_permutation(seed) order. Throws RunAborted.
RunLog run_bruteforce(Target& target, const Wordlist& wordlist, std::uint64_t seed);

/// Cluster-guided run. Throws CoverageError when the model does not cover
/// the wordlist, RunAborted on transport failure.
RunLog run_clustered(Target& target, const Wordlist& wordlist, const ClusterModel& model, std::uint64_t seed,
                     std::size_t miss_threshold = kUnlimitedMisses);

/// Run log CSV with header
/// `sequence_index,entry_id,path,status_code,valid,strategy,seed,cluster`.
std::string format_run_log(const RunLog& log);
void save_run_log(const RunLog& log, const std::filesystem::path& path);
RunLog parse_run_log(std::string_view text, const std::string& source = "run log");
RunLog load_run_log(const std::filesystem::path& path);

}  // namespace semdirb
