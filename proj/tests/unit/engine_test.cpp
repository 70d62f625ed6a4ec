#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "semdirb/engine.hpp"

namespace semdirb {
namespace {

Wordlist numbered(std::size_t n) {
    std::vector<std::string> paths;
    for (std::size_t i = 0; i < n; ++i) paths.push_back("/p" + std::to_string(i));
    return Wordlist::from_paths(paths);
}

ClusterModel labelled_model(const std::vector<std::size_t>& assignment, std::size_t k) {
    ClusterModel m;
    m.k = k;
    m.dim = 1;
    m.centroids.assign(k, {0.0});
    m.assignment = assignment;
    return m;
}

TEST(SimulatedTarget, AnswersTwoHundredOrFourOhFour) {
    SimulatedTarget t("t", {"/admin", "login"});
    EXPECT_EQ(t.status_for({"/admin", 0}), 200);
    EXPECT_EQ(t.status_for({"/login", 1}), 200);
    EXPECT_EQ(t.status_for({"/nope", 2}), 404);
    EXPECT_EQ(t.valid_count(), 2u);
    EXPECT_EQ(t.valid_in(Wordlist::from_paths({"/admin", "/x"})), 1u);
    EXPECT_EQ(t.describe(), "simulated:t");
}

TEST(SimulatedTarget, LoadsFromFileNamedByStem) {
    const auto path = testing::temp_file("shop.txt", "# valid\n/cart\n/checkout\n");
    const auto t = load_simulated_target(path);
    EXPECT_EQ(t->name(), "shop");
    EXPECT_TRUE(t->is_valid("/cart"));
    EXPECT_FALSE(t->is_valid("/# valid"));
}

TEST(Probe, AnyNon404IsValid) {
    struct Fixed : Target {
        int code;
        explicit Fixed(int c) : code(c) {}
        TargetKind kind() const override { return TargetKind::simulated; }
        std::string describe() const override { return "fixed"; }
        std::string name() const override { return "fixed"; }
        std::string locate(const PathEntry& e) const override { return e.raw; }
        int status_for(const PathEntry&) override { return code; }
    };
    for (int code : {200, 204, 301, 302, 401, 403, 500, 503}) {
        Fixed t(code);
        EXPECT_TRUE(probe(t, {"/x", 0}, 0).valid) << code;
    }
    Fixed missing(404);
    const auto o = probe(missing, {"/x", 7}, 3);
    EXPECT_FALSE(o.valid);
    EXPECT_EQ(o.entry_id, 7u);
    EXPECT_EQ(o.sequence_index, 3u);
    EXPECT_EQ(o.status_code, 404);
}

TEST(BruteForce, AllValidCountsUp) {
    const auto wl = Wordlist::from_paths({"/a", "/b", "/c"});
    SimulatedTarget t("t", wl.raw_paths());
    const auto log = run_bruteforce(t, wl, 1);
    EXPECT_EQ(log.cumulative_valid(), (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_EQ(log.strategy, Strategy::bruteforce);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(log.outcomes[i].sequence_index, i);
}

TEST(BruteForce, VisitsEveryEntryOnceAndIsDeterministic) {
    const auto wl = numbered(200);
    SimulatedTarget t("t", {"/p3", "/p50"});
    const auto a = run_bruteforce(t, wl, 42);
    const auto b = run_bruteforce(t, wl, 42);
    const auto c = run_bruteforce(t, wl, 43);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    std::set<EntryId> seen;
    for (const auto& o : a.outcomes) seen.insert(o.entry_id);
    EXPECT_EQ(seen.size(), 200u);
    EXPECT_EQ(a.valid_count(), 2u);
}

TEST(BruteForce, MeanCurveFollowsTheHypergeometricLine) {
    const std::size_t n = 100, v = 20, seeds = 2000;
    const auto wl = numbered(n);
    std::vector<std::string> valid;
    for (std::size_t i = 0; i < v; ++i) valid.push_back("/p" + std::to_string(i * 5));
    SimulatedTarget t("t", valid);
    std::vector<double> mean(n, 0.0);
    for (std::uint64_t s = 0; s < seeds; ++s) {
        const auto cum = run_bruteforce(t, wl, s).cumulative_valid();
        for (std::size_t i = 0; i < n; ++i) mean[i] += static_cast<double>(cum[i]) / seeds;
    }
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(mean[i], double(v) * double(i + 1) / double(n), 0.05 * v) << i;
}

TEST(Clustered, SingleClusterReproducesBruteForceOrder) {
    const auto wl = numbered(57);
    SimulatedTarget t("t", {"/p1", "/p9", "/p30"});
    const auto model = labelled_model(std::vector<std::size_t>(57, 0), 1);
    for (std::uint64_t seed : {0u, 5u, 99u}) {
        const auto brute = run_bruteforce(t, wl, seed);
        const auto guided = run_clustered(t, wl, model, seed);
        ASSERT_EQ(brute.outcomes.size(), guided.outcomes.size());
        for (std::size_t i = 0; i < brute.outcomes.size(); ++i) {
            EXPECT_EQ(brute.outcomes[i].entry_id, guided.outcomes[i].entry_id);
            EXPECT_EQ(guided.outcomes[i].cluster, 0u);
        }
    }
}

TEST(Clustered, StaysInClusterAfterAHit) {
    // Entries 0..9 in cluster 0, all valid; 10..49 in cluster 1, none valid.
    const auto wl = numbered(50);
    std::vector<std::string> valid;
    std::vector<std::size_t> assignment(50, 1);
    for (std::size_t i = 0; i < 10; ++i) {
        valid.push_back("/p" + std::to_string(i));
        assignment[i] = 0;
    }
    SimulatedTarget t("t", valid);
    const auto model = labelled_model(assignment, 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto log = run_clustered(t, wl, model, seed);
        std::size_t first = 0;
        while (!log.outcomes[first].valid) ++first;
        for (std::size_t i = first; i < first + 10; ++i) EXPECT_TRUE(log.outcomes[i].valid) << seed << " " << i;
    }
}

TEST(Clustered, MissThresholdLeavesCluster) {
    // Cluster 0: one valid entry followed by misses. Cluster 1: the rest.
    std::vector<std::size_t> assignment(10, 0);
    for (std::size_t i = 5; i < 10; ++i) assignment[i] = 1;
    const auto model = labelled_model(assignment, 2);
    ClusterScheduler s(model, 3, 2);
    // Drive the scheduler manually: first draw valid, then misses.
    const auto first = s.next();
    s.report(true);
    ASSERT_EQ(s.current_cluster(), model.assignment[first]);
    s.next();
    s.report(false);
    EXPECT_EQ(s.consecutive_misses(), 1u);
    EXPECT_TRUE(s.current_cluster().has_value());
    s.next();
    s.report(false);
    EXPECT_FALSE(s.current_cluster().has_value());
    EXPECT_EQ(s.remaining(), 7u);
}

TEST(Clustered, LeavesClusterWhenPoolEmpties) {
    const auto model = labelled_model({0, 1, 1, 1}, 2);
    ClusterScheduler s(model, 0);
    for (int i = 0; i < 4; ++i) {
        const auto id = s.next();
        s.report(true);
        if (model.assignment[id] == 0) EXPECT_FALSE(s.current_cluster().has_value());
    }
    EXPECT_TRUE(s.done());
    EXPECT_THROW(s.next(), DataError);
}

TEST(Clustered, SchedulerProtocolErrors) {
    const auto model = labelled_model({0, 0}, 1);
    ClusterScheduler s(model, 0);
    EXPECT_THROW(s.report(true), DataError);
    s.next();
    EXPECT_THROW(s.next(), DataError);
    EXPECT_THROW(ClusterScheduler(model, 0, 0), DataError);
}

TEST(Clustered, ZeroValidPaths) {
    const auto wl = numbered(30);
    SimulatedTarget t("t", {});
    const auto model = labelled_model(std::vector<std::size_t>(30, 0), 1);
    const auto log = run_clustered(t, wl, model, 1);
    EXPECT_EQ(log.outcomes.size(), 30u);
    EXPECT_EQ(log.valid_count(), 0u);
}

TEST(Clustered, CoverageChecked) {
    const auto wl = numbered(5);
    SimulatedTarget t("t", {});
    EXPECT_THROW(run_clustered(t, wl, labelled_model({0, 0, 0}, 1), 0), CoverageError);
}

TEST(ClusteredProperties, EveryEntryExactlyOnceAndFinalCountsAgree) {
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Rng rng(trial);
        const std::size_t n = 1 + rng.below(120);
        const std::size_t k = 1 + rng.below(std::min<std::size_t>(n, 10));
        std::vector<std::size_t> assignment(n);
        for (auto& a : assignment) a = rng.below(k);
        std::vector<std::string> valid;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.below(4) == 0) valid.push_back("/p" + std::to_string(i));
        const auto wl = numbered(n);
        SimulatedTarget t("t", valid);
        const std::size_t threshold = rng.below(2) ? kUnlimitedMisses : 1 + rng.below(5);
        const auto log = run_clustered(t, wl, labelled_model(assignment, k), trial, threshold);
        std::set<EntryId> seen;
        for (const auto& o : log.outcomes) seen.insert(o.entry_id);
        EXPECT_EQ(seen.size(), n);
        EXPECT_EQ(log.outcomes.size(), n);
        EXPECT_EQ(log.valid_count(), run_bruteforce(t, wl, trial).valid_count());
        EXPECT_EQ(log.valid_count(), valid.size());
    }
}

TEST(RunLogCsv, RoundTripWithQuoting) {
    const auto wl = Wordlist::from_paths({"/plain", "/with,comma", "/with\"quote"});
    SimulatedTarget t("t", {"/with,comma"});
    const auto model = labelled_model({0, 1, 1}, 2);
    auto log = run_clustered(t, wl, model, 8);
    const auto text = format_run_log(log);
    EXPECT_EQ(text.rfind("sequence_index,entry_id,path,status_code,valid,strategy,seed,cluster\n", 0), 0u);
    EXPECT_NE(text.find("\"/with,comma\",200,true,clustered,8,1"), std::string::npos) << text;
    EXPECT_NE(text.find("\"/with\"\"quote\",404,false"), std::string::npos) << text;
    auto back = parse_run_log(text);
    back.target = log.target;
    EXPECT_EQ(back, log);

    const auto brute = run_bruteforce(t, wl, 2);
    const auto path = testing::temp_file("run.csv", "");
    save_run_log(brute, path);
    auto loaded = load_run_log(path);
    loaded.target = brute.target;
    EXPECT_EQ(loaded, brute);
}

TEST(RunLogCsv, Rejects) {
    const std::string header = "sequence_index,entry_id,path,status_code,valid,strategy,seed,cluster\n";
    EXPECT_THROW(parse_run_log("nope\n"), DataError);
    EXPECT_THROW(parse_run_log(header + "0,0,/a,200,yes,bruteforce,1,\n"), DataError);
    EXPECT_THROW(parse_run_log(header + "0,0,/a,404,true,bruteforce,1,\n"), DataError);
    EXPECT_THROW(parse_run_log(header + "1,0,/a,200,true,bruteforce,1,\n"), DataError);
    EXPECT_THROW(parse_run_log(header + "0,0,/a,200,true,random,1,\n"), DataError);
    EXPECT_THROW(parse_run_log(header + "0,0,/a,200,true,bruteforce,1,\n1,1,/b,200,true,bruteforce,2,\n"), DataError);
}

TEST(StrategyNames, RoundTrip) {
    EXPECT_EQ(parse_strategy(to_string(Strategy::bruteforce)), Strategy::bruteforce);
    EXPECT_EQ(parse_strategy("clustered"), Strategy::clustered);
    EXPECT_THROW(parse_strategy("smart"), DataError);
}

}  // namespace
}  // namespace semdirb
