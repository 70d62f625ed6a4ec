#include "semdirb/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <future>
#include <thread>

#include "semdirb/error.hpp"
#include "text_io.hpp"

namespace semdirb {

std::size_t requests_to_reach(const std::vector<std::size_t>& cumulative, std::size_t target) {
    if (target == 0) return 0;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) throw DataError("cumulative curve never reaches " + std::to_string(target));
    return static_cast<std::size_t>(it - cumulative.begin()) + 1;
}

BenchmarkReport compute_curves(const std::map<Strategy, std::vector<RunLog>>& logs) {
    BenchmarkReport report;
    bool have_n = false;
    for (const auto& [strategy, runs] : logs) {
        if (runs.empty()) throw DataError("no runs for strategy " + std::string(to_string(strategy)));
        for (const auto& run : runs) {
            if (!have_n) {
                report.n = run.outcomes.size();
                have_n = true;
            } else if (run.outcomes.size() != report.n) {
                throw DataError("run logs have mismatched lengths (" + std::to_string(run.outcomes.size()) + " vs " +
                                std::to_string(report.n) + ")");
            }
        }
        const auto n = report.n;
        const double reps = static_cast<double>(runs.size());

        StrategyCurves sc;
        sc.total_valid = runs.front().valid_count();
        const std::size_t v95 = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sc.total_valid) - 1e-9));
        std::vector<std::vector<std::size_t>> curves;
        curves.reserve(runs.size());
        for (const auto& run : runs) {
            curves.push_back(run.cumulative_valid());
            const auto final_valid = curves.back().empty() ? 0 : curves.back().back();
            if (final_valid != sc.total_valid) throw DataError("run logs disagree on the total valid count");
            sc.requests_to_full.push_back(requests_to_reach(curves.back(), sc.total_valid));
            sc.requests_to_95.push_back(requests_to_reach(curves.back(), v95));
        }

        sc.mean_curve.assign(n, 0.0);
        sc.std_curve.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (const auto& c : curves) sum += static_cast<double>(c[i]);
            const double mean = sum / reps;
            double ss = 0.0;
            for (const auto& c : curves) {
                const double d = static_cast<double>(c[i]) - mean;
                ss += d * d;
            }
            sc.mean_curve[i] = mean;
            sc.std_curve[i] = std::sqrt(ss / reps);
        }

        double req_sum = 0.0, req95_sum = 0.0;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            req_sum += static_cast<double>(sc.requests_to_full[r]);
            req95_sum += static_cast<double>(sc.requests_to_95[r]);
        }
        sc.mean_requests_to_full = req_sum / reps;
        sc.mean_requests_to_95 = req95_sum / reps;
        if (sc.total_valid > 0 && n > 0) {
            double area = 0.0;
            for (double m : sc.mean_curve) area += m;
            sc.auc = area / (static_cast<double>(n) * static_cast<double>(sc.total_valid));
        }
        report.strategies.emplace(strategy, std::move(sc));
    }

    const auto bf = report.strategies.find(Strategy::bruteforce);
    const auto cl = report.strategies.find(Strategy::clustered);
    if (bf != report.strategies.end() && cl != report.strategies.end()) {
        auto ratio = [](double num, double den) { return den > 0.0 ? 1.0 - num / den : 0.0; };
        report.improvement = ratio(cl->second.mean_requests_to_full, bf->second.mean_requests_to_full);
        report.improvement_95 = ratio(cl->second.mean_requests_to_95, bf->second.mean_requests_to_95);
    }
    return report;
}

namespace {

RunLog run_one(const ExperimentPlan& plan, Strategy strategy, std::size_t rep) {
    const std::uint64_t seed = plan.base_seed + rep;
    if (strategy == Strategy::bruteforce) return run_bruteforce(*plan.target, plan.wordlist, seed);
    return run_clustered(*plan.target, plan.wordlist, *plan.model, seed, plan.miss_threshold);
}

void validate_plan(const ExperimentPlan& plan) {
    if (!plan.target) throw DataError("experiment plan has no target");
    if (plan.repetitions < 1) throw DataError("repetitions must be at least 1");
    if (plan.strategies.empty()) throw DataError("experiment plan has no strategies");
    if (plan.wordlist.empty()) throw DataError("experiment plan has an empty wordlist");
    for (auto s : plan.strategies) {
        if (s != Strategy::clustered) continue;
        if (!plan.model) throw DataError("clustered strategy needs a cluster model");
        if (plan.model->assignment.size() != plan.wordlist.size())
            throw CoverageError("cluster model does not cover the wordlist");
    }
}

std::string run_file_name(Strategy s, std::size_t rep) {
    return std::string(to_string(s)) + "_rep" + std::to_string(rep) + ".csv";
}

// Strategies in plan order, deduplicated.
std::vector<Strategy> plan_strategies(const ExperimentPlan& plan) {
    std::vector<Strategy> out;
    for (auto s : plan.strategies)
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
}

}  // namespace

std::map<Strategy, std::vector<RunLog>> run_repetitions(const ExperimentPlan& plan) {
    validate_plan(plan);
    std::map<Strategy, std::vector<RunLog>> logs;
    for (auto strategy : plan_strategies(plan)) {
        auto& runs = logs[strategy];
        runs.resize(plan.repetitions);
        if (plan.target->concurrent_safe()) {
            const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
            for (std::size_t base = 0; base < plan.repetitions; base += workers) {
                std::vector<std::future<RunLog>> batch;
                for (std::size_t r = base; r < std::min(plan.repetitions, base + workers); ++r)
                    batch.push_back(std::async(std::launch::async, [&plan, strategy, r] { return run_one(plan, strategy, r); }));
                for (std::size_t i = 0; i < batch.size(); ++i) runs[base + i] = batch[i].get();
            }
        } else {
            for (std::size_t r = 0; r < plan.repetitions; ++r) runs[r] = run_one(plan, strategy, r);
        }
    }
    return logs;
}

std::string default_experiment_name(const Target& target, std::uint64_t base_seed) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &utc);
    return target.name() + "_" + stamp + "_" + std::to_string(base_seed);
}

ExperimentResult run_experiment(const ExperimentPlan& plan, const std::filesystem::path& output_root,
                                std::optional<std::string> name) {
    validate_plan(plan);
    ExperimentResult result;
    result.directory = output_root / (name ? *name : default_experiment_name(*plan.target, plan.base_seed));
    const auto runs_dir = result.directory / "runs";

    // Live targets run one repetition at a time so a failure leaves every
    // completed log on disk.
    for (auto strategy : plan_strategies(plan)) {
        auto& runs = result.logs[strategy];
        if (plan.target->concurrent_safe()) {
            ExperimentPlan single = plan;
            single.strategies = {strategy};
            runs = std::move(run_repetitions(single)[strategy]);
            for (std::size_t r = 0; r < runs.size(); ++r) save_run_log(runs[r], runs_dir / run_file_name(strategy, r));
            continue;
        }
        for (std::size_t r = 0; r < plan.repetitions; ++r) {
            try {
                runs.push_back(run_one(plan, strategy, r));
            } catch (const RunAborted& e) {
                save_run_log(e.partial(), runs_dir / ("partial_" + run_file_name(strategy, r)));
                throw;
            }
            save_run_log(runs.back(), runs_dir / run_file_name(strategy, r));
        }
    }

    result.report = compute_curves(result.logs);
    detail::write_file(result.directory / "report.tsv", format_report(result.report));
    emit_plot_data(result.report, result.directory / "plot.tsv");
    return result;
}

std::string format_plot_data(const BenchmarkReport& report) {
    std::string out = "index\tstrategy\tmean\tstd\n";
    for (const auto& [strategy, sc] : report.strategies) {
        const std::string name(to_string(strategy));
        for (std::size_t i = 0; i < sc.mean_curve.size(); ++i) {
            out += std::to_string(i);
            out += '\t';
            out += name;
            out += '\t';
            out += detail::format_fixed6(sc.mean_curve[i]);
            out += '\t';
            out += detail::format_fixed6(sc.std_curve[i]);
            out += '\n';
        }
    }
    return out;
}

void emit_plot_data(const BenchmarkReport& report, const std::filesystem::path& path) {
    detail::write_file(path, format_plot_data(report));
}

std::map<Strategy, PlotCurves> parse_plot_data(std::string_view text) {
    std::map<Strategy, PlotCurves> out;
    const auto lines = detail::split_lines(text);
    if (lines.empty() || lines[0] != "index\tstrategy\tmean\tstd") throw DataError("plot data header missing");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty() || lines[i].front() == '#') continue;
        const std::string where = "plot data line " + std::to_string(i + 1);
        const auto cols = detail::split(lines[i], '\t');
        if (cols.size() != 4) throw DataError("expected 4 columns at " + where);
        auto& pc = out[parse_strategy(cols[1])];
        if (detail::parse_uint(cols[0], where) != pc.mean.size()) throw DataError("index out of order at " + where);
        pc.mean.push_back(detail::parse_double(cols[2], where));
        pc.std.push_back(detail::parse_double(cols[3], where));
    }
    return out;
}

std::string format_report(const BenchmarkReport& report) {
    std::string out = format_plot_data(report);
    auto line = [&out](const std::string& key, const std::string& value) { out += "# " + key + "\t" + value + "\n"; };
    auto join = [](const std::vector<std::size_t>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
        return s;
    };
    out += "# summary\n";
    line("n", std::to_string(report.n));
    for (const auto& [strategy, sc] : report.strategies) {
        const std::string p = std::string(to_string(strategy)) + ".";
        line(p + "repetitions", std::to_string(sc.requests_to_full.size()));
        line(p + "total_valid", std::to_string(sc.total_valid));
        line(p + "mean_requests_to_full", detail::format_fixed6(sc.mean_requests_to_full));
        line(p + "mean_requests_to_95", detail::format_fixed6(sc.mean_requests_to_95));
        line(p + "auc", detail::format_fixed6(sc.auc));
        line(p + "requests_to_full", join(sc.requests_to_full));
        line(p + "requests_to_95", join(sc.requests_to_95));
    }
    if (report.improvement) line("improvement", detail::format_fixed6(*report.improvement));
    if (report.improvement_95) line("improvement_95", detail::format_fixed6(*report.improvement_95));
    return out;
}

}  // namespace semdirb
