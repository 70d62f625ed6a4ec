#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "semdirb/bench.hpp"
#include "semdirb/cluster.hpp"
#include "semdirb/embed.hpp"
#include "semdirb/engine.hpp"
#include "semdirb/error.hpp"
#include "semdirb/tokenize.hpp"
#include "semdirb/wordlist.hpp"

namespace semdirb::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    std::string wordlist;
    std::string sentences;
    std::string embeddings;
    std::string clusters;
    std::string target;
    std::string out;
    std::string out_dir;
    std::string name;
    std::string elbow;
    std::string elbow_out;
    std::string miss_threshold = "inf";
    std::string strategies = "both";
    std::vector<std::string> inputs;
    std::uint64_t seed = 0;
    std::size_t dim = kDefaultEmbeddingDim;
    std::size_t k = kDefaultClusterCount;
    std::size_t restarts = 10;
    std::size_t max_iters = 300;
    double tol = 1e-4;
    std::size_t repetitions = kDefaultRepetitions;
    std::size_t retries = 3;
    long timeout_ms = 5000;
    long latency_us = 0;
    bool use_clustering = false;
    bool insecure = false;
};

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write file: " + path);
    f << content;
    if (!f) throw DataError("error while writing file: " + path);
}

std::size_t parse_miss_threshold(const std::string& s) {
    if (s == "inf" || s == "infinity") return kUnlimitedMisses;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || v == 0 || s.front() == '-')
        throw UsageError("--miss-threshold must be a positive integer or 'inf', got '" + s + "'");
    return static_cast<std::size_t>(v);
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw UsageError("--elbow expects kmin..kmax, got '" + s + "'");
    try {
        std::size_t p1 = 0, p2 = 0;
        const auto lo = std::stoull(s.substr(0, dots), &p1);
        const auto hi = std::stoull(s.substr(dots + 2), &p2);
        if (p1 != dots || p2 != s.size() - dots - 2) throw std::invalid_argument("trailing");
        return {lo, hi};
    } catch (const std::exception&) {
        throw UsageError("--elbow expects kmin..kmax, got '" + s + "'");
    }
}

fs::path resolve_out_dir(const CliConfig& cfg) {
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return "semdirb-out";
}

HttpOptions http_options(const CliConfig& cfg) {
    HttpOptions h;
    h.retries = cfg.retries;
    h.timeout = std::chrono::milliseconds(cfg.timeout_ms);
    h.verify_tls = !cfg.insecure;
    return h;
}

std::vector<Strategy> parse_strategies(const std::string& s) {
    if (s == "both") return {Strategy::bruteforce, Strategy::clustered};
    if (s == "bruteforce") return {Strategy::bruteforce};
    if (s == "clustered") return {Strategy::clustered};
    throw UsageError("--strategies must be both, bruteforce or clustered, got '" + s + "'");
}

// Sentences TSV from `tokenize`, checked against the wordlist.
std::vector<TokenizedEntry> load_sentences(const std::string& path, const Wordlist& wordlist) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path);
    std::vector<TokenizedEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) throw DataError("expected entry_id<TAB>raw<TAB>sentence at " + where);
        TokenizedEntry te;
        try {
            te.entry_id = std::stoull(line.substr(0, t1));
        } catch (const std::exception&) {
            throw DataError("bad entry id at " + where);
        }
        if (te.entry_id != out.size() || te.entry_id >= wordlist.size() ||
            wordlist[te.entry_id].raw != line.substr(t1 + 1, t2 - t1 - 1))
            throw CoverageError("sentence row does not match wordlist entry " + std::to_string(out.size()) + " at " + where);
        te.sentence = line.substr(t2 + 1);
        std::istringstream words(te.sentence);
        for (std::string w; words >> w;) te.tokens.push_back(w);
        out.push_back(std::move(te));
    }
    if (out.size() != wordlist.size())
        throw CoverageError("sentences file " + path + " covers " + std::to_string(out.size()) + " of " +
                            std::to_string(wordlist.size()) + " entries; missing '" + wordlist[out.size()].raw + "'");
    return out;
}

int cmd_tokenize(const CliConfig& cfg, std::ostream& out) {
    const auto wl = load_wordlist(cfg.wordlist);
    write_output(cfg.out, format_sentences_tsv(wl, tokenize_all(wl)), out);
    return kOk;
}

int cmd_embed(const CliConfig& cfg, std::ostream& out) {
    const auto wl = load_wordlist(cfg.wordlist);
    const auto tokenized = cfg.sentences.empty() ? tokenize_all(wl) : load_sentences(cfg.sentences, wl);
    const auto set = embed_all(tokenized, cfg.dim, cfg.seed);
    write_output(cfg.out, format_embeddings(set, wl), out);
    return kOk;
}

int cmd_cluster(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    std::optional<std::pair<std::size_t, std::size_t>> range;
    if (!cfg.elbow.empty()) range = parse_range(cfg.elbow);
    const auto wl = load_wordlist(cfg.wordlist);
    const auto set = load_embeddings(cfg.embeddings, wl);

    KMeansOptions opt;
    opt.k = cfg.k;
    opt.seed = cfg.seed;
    opt.restarts = cfg.restarts;
    opt.max_iters = cfg.max_iters;
    opt.tol = cfg.tol;
    if (range) {
        const auto curve = elbow_select(set, range->first, range->second, opt);
        for (auto k : curve.non_monotonic_k) err << "warning: inertia increased at k=" << k << "\n";
        std::string tsv = "k\tinertia\n";
        for (const auto& p : curve.points) tsv += std::to_string(p.k) + "\t" + std::to_string(p.inertia) + "\n";
        if (!cfg.elbow_out.empty()) write_output(cfg.elbow_out, tsv, out);
        err << "elbow: knee at k=" << curve.knee_k << ", chosen k=" << curve.chosen_k << "\n";
        opt.k = curve.chosen_k;
    }
    const auto model = kmeans(set, opt);
    write_output(cfg.out, format_cluster_config(model, wl), out);
    err << "k=" << model.k << " inertia=" << model.inertia << "\n";
    return kOk;
}

int cmd_pca(const CliConfig& cfg, std::ostream& out) {
    const auto wl = load_wordlist(cfg.wordlist);
    const auto set = load_embeddings(cfg.embeddings, wl);
    std::optional<ClusterModel> model;
    if (!cfg.clusters.empty()) model = load_cluster_config(cfg.clusters, wl);
    const auto proj = pca_project(set);
    write_output(cfg.out, format_plot_points(proj, model ? &*model : nullptr), out);
    return kOk;
}

int cmd_run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.use_clustering && cfg.clusters.empty()) throw UsageError("--use-clustering requires --clusters");
    const auto threshold = parse_miss_threshold(cfg.miss_threshold);
    const auto wl = load_wordlist(cfg.wordlist);
    std::optional<ClusterModel> model;
    if (cfg.use_clustering) model = load_cluster_config(cfg.clusters, wl);
    auto target = make_target(cfg.target, http_options(cfg), std::chrono::microseconds(cfg.latency_us));

    const auto strategy = cfg.use_clustering ? Strategy::clustered : Strategy::bruteforce;
    const fs::path log_path = cfg.out.empty()
        ? resolve_out_dir(cfg) / ("run_" + std::string(to_string(strategy)) + "_" + std::to_string(cfg.seed) + ".csv")
        : fs::path(cfg.out);
    try {
        const RunLog log = model ? run_clustered(*target, wl, *model, cfg.seed, threshold)
                                 : run_bruteforce(*target, wl, cfg.seed);
        save_run_log(log, log_path);
        const auto cum = log.cumulative_valid();
        out << "strategy=" << to_string(strategy) << " probes=" << log.outcomes.size()
            << " valid=" << log.valid_count() << " requests_to_full=" << requests_to_reach(cum, log.valid_count())
            << " log=" << log_path.string() << "\n";
    } catch (const RunAborted& e) {
        save_run_log(e.partial(), log_path);
        err << "partial run log written to " << log_path.string() << "\n";
        throw;
    }
    return kOk;
}

int cmd_bench(const CliConfig& cfg, std::ostream& out) {
    ExperimentPlan plan;
    plan.strategies = parse_strategies(cfg.strategies);
    plan.miss_threshold = parse_miss_threshold(cfg.miss_threshold);
    const bool clustered = std::find(plan.strategies.begin(), plan.strategies.end(), Strategy::clustered) != plan.strategies.end();
    if (clustered && cfg.clusters.empty()) throw UsageError("--strategies " + cfg.strategies + " requires --clusters");
    if (cfg.repetitions < 1) throw UsageError("--repetitions must be at least 1");
    plan.repetitions = cfg.repetitions;
    plan.base_seed = cfg.seed;
    plan.wordlist = load_wordlist(cfg.wordlist);
    if (clustered) plan.model = load_cluster_config(cfg.clusters, plan.wordlist);
    plan.target = make_target(cfg.target, http_options(cfg), std::chrono::microseconds(cfg.latency_us));

    std::optional<std::string> name;
    if (!cfg.name.empty()) name = cfg.name;
    const auto result = run_experiment(plan, resolve_out_dir(cfg), name);
    out << "experiment=" << result.directory.string() << "\n";
    for (const auto& [s, sc] : result.report.strategies)
        out << to_string(s) << ": valid=" << sc.total_valid << " mean_requests_to_full=" << sc.mean_requests_to_full
            << " mean_requests_to_95=" << sc.mean_requests_to_95 << " auc=" << sc.auc << "\n";
    if (result.report.improvement)
        out << "improvement=" << *result.report.improvement << " improvement_95=" << *result.report.improvement_95 << "\n";
    return kOk;
}

int cmd_merge(const CliConfig& cfg, std::ostream& out) {
    std::vector<std::pair<std::string, Wordlist>> lists;
    for (const auto& in : cfg.inputs) {
        const auto eq = in.find('=');
        std::string name = eq == std::string::npos ? fs::path(in).stem().string() : in.substr(0, eq);
        const std::string path = eq == std::string::npos ? in : in.substr(eq + 1);
        lists.emplace_back(std::move(name), load_wordlist(path));
    }
    const auto merged = merge_wordlists(lists, cfg.seed);
    save_wordlist(merged, cfg.out);
    save_source_labels(merged, cfg.out + ".labels.tsv");
    out << "merged " << lists.size() << " wordlists into " << merged.size() << " entries: " << cfg.out << "\n";
    return kOk;
}

void add_seed(CLI::App* sub, CliConfig& cfg, const char* what) {
    sub->add_option("--seed", cfg.seed, what);
}

void add_target_options(CLI::App* sub, CliConfig& cfg) {
    sub->add_option("--target", cfg.target, "http(s) base URL, or a file of valid paths for a simulated target")->required();
    sub->add_option("--wordlist", cfg.wordlist, "Wordlist file")->required()->check(CLI::ExistingFile);
    sub->add_option("--clusters", cfg.clusters, "Cluster config file");
    sub->add_option("--miss-threshold", cfg.miss_threshold,
                    "Consecutive misses before leaving a cluster (positive integer or inf)");
    sub->add_option("--out-dir", cfg.out_dir, std::string("Output directory (default: $") + kOutputDirEnv + " or ./semdirb-out)");
    sub->add_option("--retries", cfg.retries, "Retries per request before aborting (http targets)");
    sub->add_option("--timeout-ms", cfg.timeout_ms, "Connect/read timeout in milliseconds (http targets)");
    sub->add_flag("--insecure", cfg.insecure, "Skip TLS certificate verification");
    sub->add_option("--latency-us", cfg.latency_us, "Fixed per-request delay for simulated targets");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"semdirb: cluster-guided web content discovery"};
    app.name("semdirb");
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1, 1);

    auto* tok = app.add_subcommand("tokenize", "Split wordlist entries into sentences (TSV)");
    tok->add_option("--wordlist", cfg.wordlist, "Wordlist file")->required()->check(CLI::ExistingFile);
    tok->add_option("--out", cfg.out, "Output TSV (stdout when omitted)");

    auto* emb = app.add_subcommand("embed", "Embed sentences with the n-gram hashing embedder");
    emb->add_option("--wordlist", cfg.wordlist, "Wordlist file")->required()->check(CLI::ExistingFile);
    emb->add_option("--sentences", cfg.sentences, "Sentences TSV from `tokenize` (tokenizes the wordlist when omitted)");
    emb->add_option("--dim", cfg.dim, "Embedding dimension")->check(CLI::Range(std::size_t{8}, std::size_t{1} << 20));
    add_seed(emb, cfg, "Hash seed");
    emb->add_option("--out", cfg.out, "Output embedding file")->required();

    auto* clu = app.add_subcommand("cluster", "K-means over embeddings; writes the cluster config");
    clu->add_option("--wordlist", cfg.wordlist, "Wordlist file")->required()->check(CLI::ExistingFile);
    clu->add_option("--embeddings", cfg.embeddings, "Embedding file")->required()->check(CLI::ExistingFile);
    clu->add_option("--k", cfg.k, "Number of clusters (ignored with --elbow)")->check(CLI::PositiveNumber);
    clu->add_option("--elbow", cfg.elbow, "Select k by the elbow rule over kmin..kmax");
    clu->add_option("--elbow-out", cfg.elbow_out, "Write the k/inertia curve as TSV");
    add_seed(clu, cfg, "K-means seed");
    clu->add_option("--restarts", cfg.restarts, "K-means++ restarts")->check(CLI::PositiveNumber);
    clu->add_option("--max-iters", cfg.max_iters, "Lloyd iteration cap")->check(CLI::PositiveNumber);
    clu->add_option("--tol", cfg.tol, "Centroid shift tolerance")->check(CLI::PositiveNumber);
    clu->add_option("--out", cfg.out, "Output cluster config")->required();

    auto* pca = app.add_subcommand("pca", "2-D PCA projection for scatter plots (TSV)");
    pca->add_option("--wordlist", cfg.wordlist, "Wordlist file")->required()->check(CLI::ExistingFile);
    pca->add_option("--embeddings", cfg.embeddings, "Embedding file")->required()->check(CLI::ExistingFile);
    pca->add_option("--clusters", cfg.clusters, "Cluster config for the colour column");
    pca->add_option("--out", cfg.out, "Output TSV (stdout when omitted)");

    auto* run_cmd = app.add_subcommand("run", "One dirbusting run; writes the run log CSV");
    add_target_options(run_cmd, cfg);
    add_seed(run_cmd, cfg, "Run seed");
    run_cmd->add_flag("--use-clustering", cfg.use_clustering, "Use the cluster-guided strategy (needs --clusters)");
    run_cmd->add_option("--out", cfg.out, "Run log CSV (default: <out-dir>/run_<strategy>_<seed>.csv)");

    auto* bench = app.add_subcommand("bench", "Repeated seeded runs of both strategies with mean/std curves");
    add_target_options(bench, cfg);
    add_seed(bench, cfg, "Base seed; repetition r uses seed+r");
    bench->add_option("--repetitions", cfg.repetitions, "Repetitions per strategy");
    bench->add_option("--strategies", cfg.strategies, "both, bruteforce or clustered");
    bench->add_option("--name", cfg.name, "Experiment directory name (default: <target>_<timestamp>_<seed>)");

    auto* merge = app.add_subcommand("merge", "Merge wordlists into one shuffled, deduplicated list");
    merge->add_option("--input", cfg.inputs, "NAME=PATH or PATH (name = file stem); repeatable")->required();
    add_seed(merge, cfg, "Shuffle seed");
    merge->add_option("--out", cfg.out, "Output wordlist (labels go to <out>.labels.tsv)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (tok->parsed()) return cmd_tokenize(cfg, out);
        if (emb->parsed()) return cmd_embed(cfg, out);
        if (clu->parsed()) return cmd_cluster(cfg, out, err);
        if (pca->parsed()) return cmd_pca(cfg, out);
        if (run_cmd->parsed()) return cmd_run(cfg, out, err);
        if (bench->parsed()) return cmd_bench(cfg, out);
        if (merge->parsed()) return cmd_merge(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const TransportError& e) {
        err << "transport error: " << e.what() << "\n";
        return kTransportAbort;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsage;
}

}  // namespace semdirb::cli
