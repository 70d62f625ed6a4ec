#include <string>

#include "semdirb/cluster.hpp"
#include "semdirb/error.hpp"
#include "text_io.hpp"

namespace semdirb {
namespace {

void check_model(const ClusterModel& model, const Wordlist& wordlist) {
    if (model.assignment.size() != wordlist.size())
        throw CoverageError("cluster model covers " + std::to_string(model.assignment.size()) +
                            " entries but the wordlist has " + std::to_string(wordlist.size()));
    if (model.centroids.size() != model.k) throw DataError("cluster model has wrong centroid count");
    for (auto a : model.assignment)
        if (a >= model.k) throw DataError("cluster index out of range in model");
}

}  // namespace

std::string format_cluster_config(const ClusterModel& model, const Wordlist& wordlist) {
    check_model(model, wordlist);
    std::string out;
    out += "#k=" + std::to_string(model.k) + "\n";
    out += "#dim=" + std::to_string(model.dim) + "\n";
    out += "#seed=" + std::to_string(model.seed) + "\n";
    out += "#inertia=" + detail::format_exact(model.inertia) + "\n";
    for (std::size_t j = 0; j < model.k; ++j) {
        out += "C " + std::to_string(j);
        for (double v : model.centroids[j]) {
            out += ' ';
            out += detail::format_exact(v);
        }
        out += '\n';
    }
    for (EntryId id = 0; id < model.assignment.size(); ++id)
        out += "A " + std::to_string(id) + " " + std::to_string(model.assignment[id]) + "\n";
    return out;
}

void save_cluster_config(const ClusterModel& model, const Wordlist& wordlist, const std::filesystem::path& path) {
    detail::write_file(path, format_cluster_config(model, wordlist));
}

ClusterModel load_cluster_config(const std::filesystem::path& path, const Wordlist& wordlist) {
    const std::string text = detail::read_file(path);
    ClusterModel model;
    bool have_k = false, have_dim = false, have_seed = false;
    std::vector<bool> centroid_seen, entry_seen(wordlist.size(), false);
    model.assignment.assign(wordlist.size(), 0);

    std::size_t lineno = 0;
    for (auto line : detail::split_lines(text)) {
        ++lineno;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) continue;
            const auto key = line.substr(1, eq - 1);
            const auto value = line.substr(eq + 1);
            if (key == "k") {
                model.k = detail::parse_uint(value, where);
                if (model.k == 0) throw DataError("k must be positive at " + where);
                have_k = true;
                model.centroids.assign(model.k, {});
                centroid_seen.assign(model.k, false);
            } else if (key == "dim") {
                model.dim = detail::parse_uint(value, where);
                have_dim = true;
            } else if (key == "seed") {
                model.seed = detail::parse_uint(value, where);
                have_seed = true;
            } else if (key == "inertia") {
                model.inertia = detail::parse_double(value, where);
            }
            continue;
        }
        if (!have_k || !have_dim || !have_seed) throw DataError("cluster config header incomplete before " + where);
        const auto cols = detail::split(line, ' ');
        if (cols[0] == "C") {
            if (cols.size() != model.dim + 2)
                throw DataError("centroid row has " + std::to_string(cols.size() - 2) + " values, expected " +
                                std::to_string(model.dim) + " at " + where);
            const auto idx = detail::parse_uint(cols[1], where);
            if (idx >= model.k || centroid_seen[idx]) throw DataError("bad or repeated centroid index at " + where);
            centroid_seen[idx] = true;
            auto& c = model.centroids[idx];
            c.reserve(model.dim);
            for (std::size_t d = 2; d < cols.size(); ++d) c.push_back(detail::parse_double(cols[d], where));
        } else if (cols[0] == "A") {
            if (cols.size() != 3) throw DataError("assignment row needs 2 fields at " + where);
            const auto id = detail::parse_uint(cols[1], where);
            const auto cl = detail::parse_uint(cols[2], where);
            if (id >= wordlist.size())
                throw CoverageError("assignment for entry " + std::to_string(id) + " beyond the wordlist (" +
                                    std::to_string(wordlist.size()) + " entries) at " + where);
            if (entry_seen[id]) throw DataError("repeated assignment for entry " + std::to_string(id) + " at " + where);
            if (cl >= model.k) throw DataError("cluster index " + std::to_string(cl) + " >= k at " + where);
            entry_seen[id] = true;
            model.assignment[id] = cl;
        } else {
            throw DataError("unknown row type '" + std::string(cols[0]) + "' at " + where);
        }
    }
    if (!have_k || !have_dim || !have_seed) throw DataError("cluster config is missing #k, #dim or #seed: " + path.string());
    for (std::size_t j = 0; j < model.k; ++j)
        if (!centroid_seen[j]) throw DataError("cluster config lacks centroid " + std::to_string(j) + ": " + path.string());
    for (EntryId id = 0; id < wordlist.size(); ++id)
        if (!entry_seen[id])
            throw CoverageError("cluster config " + path.string() + " has no assignment for entry " + std::to_string(id) +
                                " '" + wordlist[id].raw + "'");
    return model;
}

std::string format_plot_points(const PcaProjection& projection, const ClusterModel* model) {
    if (model && model->assignment.size() != projection.coords.size())
        throw CoverageError("cluster model does not match the projected entries");
    std::string out;
    for (EntryId id = 0; id < projection.coords.size(); ++id) {
        out += std::to_string(id);
        out += '\t';
        out += detail::format_fixed6(projection.coords[id].x);
        out += '\t';
        out += detail::format_fixed6(projection.coords[id].y);
        out += '\t';
        if (model) out += std::to_string(model->assignment[id]);
        out += '\n';
    }
    return out;
}

}  // namespace semdirb
