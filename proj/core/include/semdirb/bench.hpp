#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semdirb/cluster.hpp"
#include "semdirb/engine.hpp"
#include "semdirb/wordlist.hpp"

namespace semdirb {

inline constexpr std::size_t kDefaultRepetitions = 30;

struct ExperimentPlan {
    std::shared_ptr<Target> target;
    Wordlist wordlist;
    std::optional<ClusterModel> model;  // required for Strategy::clustered
    std::size_t repetitions = kDefaultRepetitions;
    std::uint64_t base_seed = 0;
    std::vector<Strategy> strategies{Strategy::bruteforce, Strategy::clustered};
    std::size_t miss_threshold = kUnlimitedMisses;
};

/// Aggregate of one strategy's repetitions.
struct StrategyCurves {
    std::vector<double> mean_curve;  // mean cumulative valid after i+1 requests
    std::vector<double> std_curve;   // population standard deviation
    std::vector<std::size_t> requests_to_full;  // per repetition
    std::vector<std::size_t> requests_to_95;    // per repetition, ceil(0.95 V) found
    std::size_t total_valid = 0;  // V
    double mean_requests_to_full = 0.0;
    double mean_requests_to_95 = 0.0;
    double auc = 0.0;  // sum(mean_curve) / (n V)
};

struct BenchmarkReport {
    std::size_t n = 0;
    std::map<Strategy, StrategyCurves> strategies;
    /// 1 - mean_req(clustered) / mean_req(bruteforce), when both ran.
    std::optional<double> improvement;
    std::optional<double> improvement_95;
};

/// First request count (1-based) at which `cumulative` reaches `target`;
/// 0 when target is 0.
std::size_t requests_to_reach(const std::vector<std::size_t>& cumulative, std::size_t target);

/// Pointwise mean and population std of cumulative valid counts plus the
/// discovery metrics. Every log must have the same length and the same final
/// valid count. Throws DataError otherwise.
BenchmarkReport compute_curves(const std::map<Strategy, std::vector<RunLog>>& logs);

/// Runs every strategy for repetitions r = 0..R-1 with seed base_seed + r.
/// Simulated targets run repetitions concurrently; results keep repetition order.
std::map<Strategy, std::vector<RunLog>> run_repetitions(const ExperimentPlan& plan);

struct ExperimentResult {
    BenchmarkReport report;
    std::map<Strategy, std::vector<RunLog>> logs;
    std::filesystem::path directory;
};

/// run_repetitions + compute_curves, persisting under
/// `output_root/<name>/`: runs/<strategy>_rep<r>.csv, report.tsv and plot.tsv.
/// The default name is `<target>_<UTC timestamp>_<base_seed>`. On a transport
/// abort the completed logs and the partial log are written before rethrowing.
ExperimentResult run_experiment(const ExperimentPlan& plan, const std::filesystem::path& output_root,
                                std::optional<std::string> name = std::nullopt);

std::string default_experiment_name(const Target& target, std::uint64_t base_seed);

/// TSV `index<TAB>strategy<TAB>mean<TAB>std`, six fractional digits.
std::string format_plot_data(const BenchmarkReport& report);
void emit_plot_data(const BenchmarkReport& report, const std::filesystem::path& path);

struct PlotCurves {
    std::vector<double> mean;
    std::vector<double> std;
};
/// Parses plot rows; `#` lines (the report summary) are skipped.
std::map<Strategy, PlotCurves> parse_plot_data(std::string_view text);

/// Plot rows followed by a `#`-prefixed summary block of key metrics.
std::string format_report(const BenchmarkReport& report);

}  // namespace semdirb
