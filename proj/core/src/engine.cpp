#include "semdirb/engine.hpp"

#include <numeric>

namespace semdirb {

std::vector<std::size_t> RunLog::cumulative_valid() const {
    std::vector<std::size_t> out;
    out.reserve(outcomes.size());
    std::size_t n = 0;
    for (const auto& o : outcomes) {
        n += o.valid ? 1 : 0;
        out.push_back(n);
    }
    return out;
}

std::size_t RunLog::valid_count() const {
    std::size_t n = 0;
    for (const auto& o : outcomes) n += o.valid ? 1 : 0;
    return n;
}

ClusterScheduler::ClusterScheduler(const ClusterModel& model, std::uint64_t seed, std::size_t miss_threshold)
    : cluster_of_(model.assignment), miss_threshold_(miss_threshold), rng_(seed) {
    if (miss_threshold_ == 0) throw DataError("miss threshold must be positive");
    const auto n = cluster_of_.size();
    global_.resize(n);
    std::iota(global_.begin(), global_.end(), EntryId{0});
    global_pos_ = global_;
    pools_.assign(model.k, {});
    pool_pos_.assign(n, 0);
    for (EntryId id = 0; id < n; ++id) {
        if (cluster_of_[id] >= model.k) throw DataError("cluster index out of range for entry " + std::to_string(id));
        auto& pool = pools_[cluster_of_[id]];
        pool_pos_[id] = pool.size();
        pool.push_back(id);
    }
}

void ClusterScheduler::remove(EntryId id) {
    const auto gp = global_pos_[id];
    global_[gp] = global_.back();
    global_pos_[global_[gp]] = gp;
    global_.pop_back();

    auto& pool = pools_[cluster_of_[id]];
    const auto pp = pool_pos_[id];
    pool[pp] = pool.back();
    pool_pos_[pool[pp]] = pp;
    pool.pop_back();
}

EntryId ClusterScheduler::next() {
    if (done()) throw DataError("scheduler exhausted");
    if (pending_) throw DataError("scheduler: report() must follow next()");
    const auto& source = current_ ? pools_[*current_] : global_;
    const EntryId id = source[static_cast<std::size_t>(rng_.below(source.size()))];
    remove(id);
    pending_ = id;
    return id;
}

void ClusterScheduler::report(bool valid) {
    if (!pending_) throw DataError("scheduler: report() without next()");
    const EntryId id = *pending_;
    pending_.reset();
    if (!current_) {
        if (valid) {
            current_ = cluster_of_[id];
            misses_ = 0;
        }
    } else if (valid) {
        misses_ = 0;
    } else if (++misses_ >= miss_threshold_) {
        current_.reset();
    }
    if (current_ && pools_[*current_].empty()) current_.reset();
    if (!current_) misses_ = 0;
}

namespace {

RunLog begin_log(Strategy strategy, std::uint64_t seed, const Target& target, std::size_t n) {
    RunLog log;
    log.strategy = strategy;
    log.seed = seed;
    log.target = target.describe();
    log.outcomes.reserve(n);
    return log;
}

ProbeOutcome probe_or_abort(Target& target, const PathEntry& entry, RunLog& log) {
    try {
        return probe(target, entry, log.outcomes.size());
    } catch (const TransportError& e) {
        throw RunAborted(e.what(), std::move(log));
    }
}

}  // namespace

RunLog run_bruteforce(Target& target, const Wordlist& wordlist, std::uint64_t seed) {
    if (wordlist.empty()) throw DataError("cannot run on an empty wordlist");
    RunLog log = begin_log(Strategy::bruteforce, seed, target, wordlist.size());
    Rng rng(seed);
    for (EntryId id : seeded_permutation(wordlist.size(), rng)) log.outcomes.push_back(probe_or_abort(target, wordlist[id], log));
    return log;
}

RunLog run_clustered(Target& target, const Wordlist& wordlist, const ClusterModel& model, std::uint64_t seed,
                     std::size_t miss_threshold) {
    if (wordlist.empty()) throw DataError("cannot run on an empty wordlist");
    if (model.assignment.size() != wordlist.size())
        throw CoverageError("cluster model covers " + std::to_string(model.assignment.size()) +
                            " entries but the wordlist has " + std::to_string(wordlist.size()));
    RunLog log = begin_log(Strategy::clustered, seed, target, wordlist.size());
    ClusterScheduler scheduler(model, seed, miss_threshold);
    while (!scheduler.done()) {
        const EntryId id = scheduler.next();
        auto outcome = probe_or_abort(target, wordlist[id], log);
        outcome.cluster = model.assignment[id];
        scheduler.report(outcome.valid);
        log.outcomes.push_back(std::move(outcome));
    }
    return log;
}

}  // namespace semdirb
