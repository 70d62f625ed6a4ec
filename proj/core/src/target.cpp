#include <thread>

#include "semdirb/engine.hpp"
#include "semdirb/wordlist.hpp"

namespace semdirb {

std::string_view to_string(Strategy s) {
    return s == Strategy::bruteforce ? "bruteforce" : "clustered";
}

Strategy parse_strategy(std::string_view s) {
    if (s == "bruteforce") return Strategy::bruteforce;
    if (s == "clustered") return Strategy::clustered;
    throw DataError("unknown strategy '" + std::string(s) + "'");
}

SimulatedTarget::SimulatedTarget(std::string name, const std::vector<std::string>& valid_paths,
                                 std::chrono::microseconds latency)
    : name_(std::move(name)), latency_(latency) {
    for (const auto& p : valid_paths) valid_.insert(normalize_path(p));
}

int SimulatedTarget::status_for(const PathEntry& entry) {
    if (latency_.count() > 0) std::this_thread::sleep_for(latency_);
    return is_valid(entry.raw) ? 200 : 404;
}

bool SimulatedTarget::is_valid(std::string_view raw) const {
    return valid_.find(std::string(raw)) != valid_.end();
}

std::size_t SimulatedTarget::valid_in(const Wordlist& wordlist) const {
    std::size_t n = 0;
    for (const auto& e : wordlist.entries()) n += is_valid(e.raw) ? 1 : 0;
    return n;
}

std::unique_ptr<SimulatedTarget> load_simulated_target(const std::filesystem::path& path,
                                                       std::chrono::microseconds latency) {
    const Wordlist valid = load_wordlist(path);
    return std::make_unique<SimulatedTarget>(path.stem().string(), valid.raw_paths(), latency);
}

std::unique_ptr<Target> make_target(const std::string& location, const HttpOptions& http,
                                    std::chrono::microseconds simulated_latency) {
    if (location.starts_with("http://") || location.starts_with("https://")) return std::make_unique<HttpTarget>(location, http);
    return load_simulated_target(location, simulated_latency);
}

ProbeOutcome probe(Target& target, const PathEntry& entry, std::size_t sequence_index) {
    ProbeOutcome out;
    out.entry_id = entry.id;
    out.url_or_path = target.locate(entry);
    out.status_code = target.status_for(entry);
    out.valid = out.status_code != 404;
    out.sequence_index = sequence_index;
    return out;
}

}  // namespace semdirb
