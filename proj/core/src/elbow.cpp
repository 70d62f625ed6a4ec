#include <algorithm>
#include <cmath>

#include "semdirb/cluster.hpp"
#include "semdirb/error.hpp"

namespace semdirb {

ElbowCurve choose_elbow(std::vector<ElbowPoint> points) {
    if (points.size() < 2) throw DataError("elbow selection needs at least two k values");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].k <= points[i - 1].k) throw DataError("elbow points must have strictly increasing k");

    ElbowCurve curve;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].inertia > points[i - 1].inertia * (1.0 + 1e-9) + 1e-12) curve.non_monotonic_k.push_back(points[i].k);

    const double k_lo = static_cast<double>(points.front().k);
    const double k_span = static_cast<double>(points.back().k) - k_lo;
    const auto [lo_it, hi_it] = std::minmax_element(points.begin(), points.end(),
        [](const ElbowPoint& a, const ElbowPoint& b) { return a.inertia < b.inertia; });
    const double i_lo = lo_it->inertia;
    const double i_span = hi_it->inertia - i_lo;

    auto nx = [&](const ElbowPoint& p) { return (static_cast<double>(p.k) - k_lo) / k_span; };
    auto ny = [&](const ElbowPoint& p) { return i_span > 0.0 ? (p.inertia - i_lo) / i_span : 0.0; };

    const double y0 = ny(points.front());
    const double dy = ny(points.back()) - y0;
    const double chord = std::sqrt(1.0 + dy * dy);

    std::size_t knee = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = std::fabs(dy * nx(points[i]) - (ny(points[i]) - y0)) / chord;
        if (d > best + 1e-12) {
            best = d;
            knee = i;
        }
    }
    curve.knee_k = points[knee].k;
    curve.chosen_k = knee + 1 < points.size() ? points[knee + 1].k : points[knee].k;
    curve.points = std::move(points);
    return curve;
}

ElbowCurve elbow_select(const EmbeddingSet& embeddings, std::size_t k_min, std::size_t k_max,
                        const KMeansOptions& options) {
    if (k_min < 1 || k_min >= k_max || k_max > embeddings.size())
        throw DataError("invalid elbow range [" + std::to_string(k_min) + ", " + std::to_string(k_max) +
                        "] for " + std::to_string(embeddings.size()) + " entries");
    std::vector<ElbowPoint> points;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        KMeansOptions opt = options;
        opt.k = k;
        points.push_back({k, kmeans(embeddings, opt).inertia});
    }
    return choose_elbow(std::move(points));
}

}  // namespace semdirb
