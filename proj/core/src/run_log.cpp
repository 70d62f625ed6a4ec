#include "semdirb/engine.hpp"
#include "text_io.hpp"

namespace semdirb {
namespace {
constexpr std::string_view kHeader = "sequence_index,entry_id,path,status_code,valid,strategy,seed,cluster";
}

std::string format_run_log(const RunLog& log) {
    std::string out(kHeader);
    out += '\n';
    const std::string strategy(to_string(log.strategy));
    const std::string seed = std::to_string(log.seed);
    for (const auto& o : log.outcomes) {
        out += std::to_string(o.sequence_index);
        out += ',';
        out += std::to_string(o.entry_id);
        out += ',';
        out += detail::csv_field(o.url_or_path);
        out += ',';
        out += std::to_string(o.status_code);
        out += ',';
        out += o.valid ? "true" : "false";
        out += ',';
        out += strategy;
        out += ',';
        out += seed;
        out += ',';
        if (o.cluster) out += std::to_string(*o.cluster);
        out += '\n';
    }
    return out;
}

void save_run_log(const RunLog& log, const std::filesystem::path& path) {
    detail::write_file(path, format_run_log(log));
}

RunLog parse_run_log(std::string_view text, const std::string& source) {
    const auto lines = detail::split_lines(text);
    if (lines.empty() || lines[0] != kHeader) throw DataError("run log header missing or wrong in " + source);
    RunLog log;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::string where = source + ":" + std::to_string(i + 1);
        const auto f = detail::parse_csv_record(lines[i]);
        if (f.size() != 8) throw DataError("expected 8 CSV fields at " + where);
        ProbeOutcome o;
        o.sequence_index = detail::parse_uint(f[0], where);
        o.entry_id = detail::parse_uint(f[1], where);
        o.url_or_path = f[2];
        o.status_code = static_cast<int>(detail::parse_int(f[3], where));
        if (f[4] != "true" && f[4] != "false") throw DataError("valid must be true or false at " + where);
        o.valid = f[4] == "true";
        if (o.valid != (o.status_code != 404)) throw DataError("valid flag disagrees with status code at " + where);
        if (o.sequence_index != log.outcomes.size()) throw DataError("sequence_index out of order at " + where);
        const auto strategy = parse_strategy(f[5]);
        const auto seed = detail::parse_uint(f[6], where);
        if (log.outcomes.empty()) {
            log.strategy = strategy;
            log.seed = seed;
        } else if (strategy != log.strategy || seed != log.seed) {
            throw DataError("strategy or seed changes mid-log at " + where);
        }
        if (!f[7].empty()) o.cluster = detail::parse_uint(f[7], where);
        log.outcomes.push_back(std::move(o));
    }
    return log;
}

RunLog load_run_log(const std::filesystem::path& path) {
    return parse_run_log(detail::read_file(path), path.string());
}

}  // namespace semdirb
