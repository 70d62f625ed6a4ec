#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "semdirb/bench.hpp"
#include "semdirb/cluster.hpp"
#include "semdirb/embed.hpp"
#include "semdirb/engine.hpp"

namespace semdirb {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "semdirb");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Wordlist of two families, with the first family as the valid set.
class CliPipeline : public ::testing::Test {
protected:
    void SetUp() override {
        dir = testing::temp_dir("cli");
        const auto corpus = testing::make_family_corpus({25, 25}, 3);
        wordlist = (fs::path(dir) / "words.txt").string();
        valid = (fs::path(dir) / "site.txt").string();
        save_wordlist(corpus.wordlist, wordlist);
        save_wordlist(Wordlist::from_paths(corpus.paths[0]), valid);
        embeddings = (fs::path(dir) / "words.emb").string();
        clusters = (fs::path(dir) / "words.clusters").string();
    }
    void prepare_model() {
        ASSERT_EQ(cli({"embed", "--wordlist", wordlist, "--dim", "64", "--out", embeddings}).code, 0);
        ASSERT_EQ(cli({"cluster", "--wordlist", wordlist, "--embeddings", embeddings, "--k", "2", "--restarts", "2",
                       "--out", clusters})
                      .code,
                  0);
    }
    std::string dir, wordlist, valid, embeddings, clusters;
};

TEST_F(CliPipeline, TokenizeToStdout) {
    const auto r = cli({"tokenize", "--wordlist", wordlist});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("0\t", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 50);
}

TEST_F(CliPipeline, EmbedFromSentencesMatchesDirect) {
    const auto sentences = (fs::path(dir) / "s.tsv").string();
    ASSERT_EQ(cli({"tokenize", "--wordlist", wordlist, "--out", sentences}).code, 0);
    const auto a = (fs::path(dir) / "a.emb").string(), b = (fs::path(dir) / "b.emb").string();
    ASSERT_EQ(cli({"embed", "--wordlist", wordlist, "--sentences", sentences, "--dim", "32", "--out", a}).code, 0);
    ASSERT_EQ(cli({"embed", "--wordlist", wordlist, "--dim", "32", "--out", b}).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    const auto set = load_embeddings(a, load_wordlist(wordlist));
    EXPECT_EQ(set.dim, 32u);
}

TEST_F(CliPipeline, ClusterPcaRunBench) {
    prepare_model();
    const auto model = load_cluster_config(clusters, load_wordlist(wordlist));
    EXPECT_EQ(model.k, 2u);

    const auto pca = cli({"pca", "--wordlist", wordlist, "--embeddings", embeddings, "--clusters", clusters});
    EXPECT_EQ(pca.code, 0) << pca.err;
    EXPECT_EQ(std::count(pca.out.begin(), pca.out.end(), '\n'), 50);

    const auto log = (fs::path(dir) / "run.csv").string();
    const auto run = cli({"run", "--target", valid, "--wordlist", wordlist, "--clusters", clusters, "--use-clustering",
                          "--seed", "4", "--out", log});
    EXPECT_EQ(run.code, 0) << run.err;
    const auto parsed = load_run_log(log);
    EXPECT_EQ(parsed.strategy, Strategy::clustered);
    EXPECT_EQ(parsed.valid_count(), 25u);

    const auto bench = cli({"bench", "--target", valid, "--wordlist", wordlist, "--clusters", clusters,
                            "--repetitions", "4", "--out-dir", dir, "--name", "exp"});
    EXPECT_EQ(bench.code, 0) << bench.err;
    EXPECT_TRUE(fs::exists(fs::path(dir) / "exp" / "report.tsv"));
    EXPECT_TRUE(fs::exists(fs::path(dir) / "exp" / "runs" / "clustered_rep3.csv"));
    EXPECT_NE(bench.out.find("improvement="), std::string::npos);
}

TEST_F(CliPipeline, ElbowWritesCurve) {
    ASSERT_EQ(cli({"embed", "--wordlist", wordlist, "--dim", "64", "--out", embeddings}).code, 0);
    const auto curve = (fs::path(dir) / "elbow.tsv").string();
    const auto r = cli({"cluster", "--wordlist", wordlist, "--embeddings", embeddings, "--elbow", "1..5", "--elbow-out",
                        curve, "--restarts", "2", "--out", clusters});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("chosen k="), std::string::npos);
    EXPECT_EQ(slurp(curve).rfind("k\tinertia\n1\t", 0), 0u);
    EXPECT_EQ(cli({"cluster", "--wordlist", wordlist, "--embeddings", embeddings, "--elbow", "1-5", "--out", clusters}).code,
              1);
}

TEST_F(CliPipeline, RunOutputsAreReproducible) {
    prepare_model();
    const auto a = (fs::path(dir) / "a.csv").string(), b = (fs::path(dir) / "b.csv").string();
    for (const auto& out : {a, b})
        ASSERT_EQ(cli({"run", "--target", valid, "--wordlist", wordlist, "--seed", "9", "--out", out}).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    const auto c1 = (fs::path(dir) / "c1.clusters").string();
    ASSERT_EQ(cli({"cluster", "--wordlist", wordlist, "--embeddings", embeddings, "--k", "2", "--restarts", "2",
                   "--out", c1})
                  .code,
              0);
    EXPECT_EQ(slurp(c1), slurp(clusters));
}

TEST_F(CliPipeline, UseClusteringWithoutClustersIsUsageError) {
    const auto r = cli({"run", "--target", valid, "--wordlist", wordlist, "--use-clustering"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--clusters"), std::string::npos) << r.err;
    EXPECT_EQ(cli({"bench", "--target", valid, "--wordlist", wordlist}).code, 1);
    EXPECT_EQ(cli({"run", "--target", valid, "--wordlist", wordlist, "--miss-threshold", "0"}).code, 1);
}

TEST_F(CliPipeline, DataErrorsExitTwo) {
    const auto other = (fs::path(dir) / "other.txt").string();
    save_wordlist(Wordlist::from_paths({"/x", "/y"}), other);
    prepare_model();
    const auto r = cli({"run", "--target", valid, "--wordlist", other, "--clusters", clusters, "--use-clustering"});
    EXPECT_EQ(r.code, 2);
    const auto bad = testing::temp_file("bad.emb", "#dim=4\n0\t/x\t1 2\n");
    EXPECT_EQ(cli({"cluster", "--wordlist", other, "--embeddings", bad, "--k", "1", "--out", clusters}).code, 2);
    EXPECT_EQ(cli({"run", "--target", (fs::path(dir) / "missing.txt").string(), "--wordlist", wordlist}).code, 2);
}

TEST_F(CliPipeline, TransportFailureExitsThreeWithPartialLog) {
    const auto log = (fs::path(dir) / "dead.csv").string();
    const auto r = cli({"run", "--target", "http://127.0.0.1:9", "--wordlist", wordlist, "--retries", "0",
                        "--timeout-ms", "300", "--out", log});
    EXPECT_EQ(r.code, 3) << r.err;
    EXPECT_TRUE(fs::exists(log));
    EXPECT_EQ(load_run_log(log).outcomes.size(), 0u);
}

TEST_F(CliPipeline, OutputDirFromEnvironment) {
    const auto env_dir = testing::temp_dir("env");
    ::setenv(cli::kOutputDirEnv, env_dir.c_str(), 1);
    const auto r = cli({"run", "--target", valid, "--wordlist", wordlist, "--seed", "2"});
    ::unsetenv(cli::kOutputDirEnv);
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(fs::path(env_dir) / "run_bruteforce_2.csv"));
}

TEST_F(CliPipeline, MergeWritesLabels) {
    const auto a = testing::temp_file("alpha.txt", "/a\n/shared\n");
    const auto b = testing::temp_file("beta.txt", "/b\n/shared\n");
    const auto out = (fs::path(dir) / "merged.txt").string();
    const auto r = cli({"merge", "--input", a, "--input", "second=" + b, "--seed", "1", "--out", out});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto merged = load_source_labels(load_wordlist(out), out + ".labels.tsv");
    EXPECT_EQ(merged.size(), 3u);
    EXPECT_EQ(merged.source_label(*merged.find("/shared")), "alpha");
    EXPECT_EQ(merged.source_label(*merged.find("/b")), "second");
}

TEST(Cli, HelpListsDefaults) {
    EXPECT_NE(cli({"embed", "--help"}).out.find("512"), std::string::npos);
    EXPECT_NE(cli({"cluster", "--help"}).out.find("20"), std::string::npos);
    const auto bench = cli({"bench", "--help"});
    EXPECT_EQ(bench.code, 0);
    EXPECT_NE(bench.out.find("30"), std::string::npos);
    EXPECT_NE(bench.out.find("inf"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, 1);
    EXPECT_EQ(cli({"frobnicate"}).code, 1);
    EXPECT_EQ(cli({"tokenize"}).code, 1);
    EXPECT_EQ(cli({"embed", "--wordlist", "/nonexistent", "--out", "x"}).code, 1);
}

}  // namespace
}  // namespace semdirb
